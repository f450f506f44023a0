//! Runs the whole acceptance battery and prints one line per criterion.

use std::time::Instant;

use eigenmorph::suite::{self, SuiteOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SuiteOptions::default();
    let t = Instant::now();
    let battery = suite::morphism_battery(&opts)?;
    println!("morphism battery: {} quotients in {:.1?}", battery.runs.len(), t.elapsed());
    let steps: Vec<(&str, Box<dyn Fn() -> Result<suite::CriterionOutcome, suite::SuiteError>>)> = vec![
        ("identities", Box::new(suite::criterion_identities)),
        ("lemmas", Box::new(|| suite::criterion_lemmas(&opts))),
        ("families", Box::new(|| suite::criterion_families(&opts))),
        ("morphisms", Box::new(|| Ok(suite::criterion_morphisms(&battery)))),
        ("example", Box::new(|| suite::criterion_example(&opts))),
        ("appendix", Box::new(|| suite::criterion_appendix(&opts, &battery))),
        ("duality", Box::new(|| suite::criterion_duality(&opts))),
        ("oracles", Box::new(|| suite::criterion_oracles(&opts, &battery))),
    ];
    for (name, step) in steps {
        let t = Instant::now();
        let outcome = step()?;
        println!("{}  [{name}, {:.1?}]", outcome.summary_line(), t.elapsed());
    }
    Ok(())
}
