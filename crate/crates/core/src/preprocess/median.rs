use super::GrayImage;

/// Median of each pixel's 3×3 neighbourhood (edge pixels replicated).
pub fn median3x3(img: &GrayImage) -> GrayImage {
    let (w, h) = (img.width(), img.height());
    let mut out = Vec::with_capacity(w * h);
    let mut window = [0u8; 9];
    for y in 0..h as isize {
        for x in 0..w as isize {
            let mut k = 0;
            for dy in -1..=1 {
                for dx in -1..=1 {
                    window[k] = img.get_clamped(x + dx, y + dy);
                    k += 1;
                }
            }
            window.sort_unstable();
            out.push(window[4]);
        }
    }
    GrayImage::new(w, h, out).expect("same dimensions")
}
