use polylift::logic::{demo_counterexample, EquivOptions};

fn main() -> polylift::Result<()> {
    for alpha in [2, 3] {
        let report = demo_counterexample(alpha, &EquivOptions::new(alpha, 3))?;
        println!("{report}\n");
        assert!(report.confirms());
    }
    Ok(())
}
