//! Drive a run from a TOML configuration and print the resolved file back.

use frpbeam::config::RunConfig;
use frpbeam::report::design_row;

const CONFIG: &str = r#"
[run]
case = "C"
optimizer = 2
seeds = [1, 2]

[limits]
h_max = 0.35

[swarm]
t_max = 4000

[penalty]
schedule = "constant:1e8"
"#;

fn main() {
    let cfg = RunConfig::parse(CONFIG).expect("valid config");
    cfg.validate().expect("consistent config");
    let spec = cfg.optimizer().unwrap();
    let runs = spec.replicate(&cfg.run.seeds).unwrap();
    for r in &runs.runs {
        println!("seed {}: {}", r.seed, design_row("C", &r.section, &r.cost));
    }
    println!("\n# resolved configuration\n{}", cfg.to_toml().unwrap());
}
