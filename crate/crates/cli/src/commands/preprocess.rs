use std::path::PathBuf;

use neoplasm_opt::preprocess::{
    preprocess_stages, read_pgm, write_nrm1, write_pgm, ClaheParams, GaussianParams, PgmFormat,
};
use serde::{Deserialize, Serialize};

use crate::args::PreprocessArgs;
use crate::config;
use crate::failure::Failure;
use crate::output::Run;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PreprocessConfig {
    pub input: Option<PathBuf>,
    pub clahe: ClaheParams,
    pub gaussian: GaussianParams,
}

pub fn run(args: PreprocessArgs, threads: usize) -> Result<(), Failure> {
    let mut cfg: PreprocessConfig = config::load(args.config.as_deref(), "preprocess")?;
    config::set(&mut cfg.input, args.input.map(Some));
    config::set(&mut cfg.clahe.clip_limit, args.clip);
    config::set(&mut cfg.clahe.tile_grid, args.tiles);
    config::set(&mut cfg.gaussian.sigma, args.sigma);
    config::set(&mut cfg.gaussian.kernel_size, args.ksize);
    cfg.clahe.validate()?;
    cfg.gaussian.validate()?;
    let input = cfg
        .input
        .clone()
        .ok_or_else(|| Failure::usage("no input PGM given"))?;

    let mut run = Run::start("preprocess");
    let bytes = crate::output::read_input(&input, &mut run.inputs)?;
    let img = read_pgm(&bytes[..])?;
    let stages = preprocess_stages(&img, &cfg.clahe, &cfg.gaussian)?;

    let mut nrm = Vec::new();
    write_nrm1(&stages.normalized, &mut nrm)?;
    run.write(&args.output, &nrm)?;
    if let Some(dir) = &args.dump_stages {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::runtime(format!("cannot create {}: {e}", dir.display())))?;
        for (name, stage) in [
            ("1_clahe.pgm", &stages.clahe),
            ("2_gaussian.pgm", &stages.gaussian),
            ("3_median.pgm", &stages.median),
        ] {
            let mut buf = Vec::new();
            write_pgm(stage, PgmFormat::Binary, &mut buf)?;
            run.write(&dir.join(name), &buf)?;
        }
    }
    run.finish(&args.output, &cfg, None, threads)?;
    println!(
        "preprocessed {}x{} -> {}",
        img.width(),
        img.height(),
        args.output.display()
    );
    Ok(())
}
