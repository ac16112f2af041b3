use super::{GrayImage, NormImage};

/// Min-max scaling `(I − I_min)/(I_max − I_min)` with the image's own
/// extrema. A constant image maps to all zeros.
pub fn normalize(img: &GrayImage) -> NormImage {
    let (lo, hi) = img.min_max();
    let values = if lo == hi {
        vec![0.0; img.pixels().len()]
    } else {
        let span = (hi - lo) as f64;
        img.pixels()
            .iter()
            .map(|&p| ((p - lo) as f64 / span) as f32)
            .collect()
    };
    NormImage::new(img.width(), img.height(), values).expect("values lie in [0, 1]")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let n = normalize(&GrayImage::new(3, 1, vec![0, 128, 255]).unwrap());
        assert_eq!(n.values()[0], 0.0);
        assert!((n.values()[1] as f64 - 128.0 / 255.0).abs() < 1e-7);
        assert_eq!(n.values()[2], 1.0);

        let n = normalize(&GrayImage::filled(4, 2, 7).unwrap());
        assert!(n.values().iter().all(|v| *v == 0.0));

        let n = normalize(&GrayImage::new(3, 1, vec![10, 20, 30]).unwrap());
        assert_eq!(n.values(), &[0.0, 0.5, 1.0]);
    }
}
