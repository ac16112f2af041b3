use neoplasm_opt::surrogate::{generate_synthetic, truth_sidecar_path, SyntheticSpec};

use crate::args::SynthArgs;
use crate::config;
use crate::failure::Failure;
use crate::output::{to_json, Run};

pub fn run(args: SynthArgs, threads: usize) -> Result<(), Failure> {
    let mut spec: SyntheticSpec = config::load(args.config.as_deref(), "synth")?;
    config::set(&mut spec.n_samples, args.samples);
    config::set(&mut spec.n_informative, args.informative);
    config::set(&mut spec.n_redundant, args.redundant);
    config::set(&mut spec.n_noise, args.noise);
    config::set(&mut spec.class_sep, args.sep);
    config::set(&mut spec.seed, args.seed);

    let data = generate_synthetic(&spec)?;
    let mut run = Run::start("synth");
    run.write(&args.output, data.to_csv().as_bytes())?;
    if let Some(truth) = data.truth_sidecar() {
        run.write(&truth_sidecar_path(&args.output), &to_json(&truth)?)?;
    }
    run.finish(&args.output, &spec, Some(spec.seed), threads)?;
    println!(
        "wrote {} rows x {} features to {}",
        data.n_rows(),
        data.n_features(),
        args.output.display()
    );
    Ok(())
}
