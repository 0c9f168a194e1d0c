//! Aggregates per-model means up to grand means and runs the checks.

use digraph_probe::analysis::{aggregate, ordering_check, separation_check, CellMean, Granularity};
use digraph_probe::corpus::{ComparisonGroup, ComparisonType};

// Cross-script and within-language means for three hypothetical models.
const MEANS: [(ComparisonType, [f64; 3]); 14] = [
    (ComparisonType::EnOrigPara, [0.62, 0.55, 0.50]),
    (ComparisonType::EnOrigRand, [0.35, 0.25, 0.22]),
    (ComparisonType::LatOrigPara, [0.60, 0.55, 0.52]),
    (ComparisonType::LatOrigRand, [0.49, 0.34, 0.26]),
    (ComparisonType::CyrOrigPara, [0.63, 0.54, 0.52]),
    (ComparisonType::CyrOrigRand, [0.47, 0.36, 0.27]),
    (ComparisonType::CsOrig, [0.53, 0.56, 0.60]),
    (ComparisonType::CsPara, [0.55, 0.55, 0.58]),
    (ComparisonType::LatOrigCyrPara, [0.49, 0.47, 0.46]),
    (ComparisonType::CyrOrigLatPara, [0.49, 0.47, 0.46]),
    (ComparisonType::LatOrigCyrRand, [0.42, 0.32, 0.25]),
    (ComparisonType::CyrOrigLatRand, [0.41, 0.32, 0.24]),
    (ComparisonType::LatOrigEnRand, [0.25, 0.20, 0.18]),
    (ComparisonType::CyrOrigEnRand, [0.25, 0.20, 0.16]),
];

fn main() -> digraph_probe::Result<()> {
    let models = ["small", "medium", "large"];
    let cells: Vec<CellMean> = MEANS
        .iter()
        .flat_map(|(t, v)| models.iter().zip(v).map(move |(m, x)| CellMean::new(*m, 0, *t, *x)))
        .collect();
    let grand = aggregate(&cells, Granularity::Grand)?;
    let row = grand.grand().expect("grand row");
    for g in ComparisonGroup::HIERARCHY {
        println!("{:<30} {:.4}", g.label(), row.group_mean(g).unwrap_or(f64::NAN));
    }
    let ordering = ordering_check(&grand)?;
    for s in &ordering.steps {
        println!("{} > {}: {:?}", s.higher.label(), s.lower.label(), s.outcome);
    }
    println!("separation fraction {:.2}", separation_check(&cells)?.fraction);
    Ok(())
}
