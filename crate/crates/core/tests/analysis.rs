mod common;

use digraph_probe::analysis::report::{analyze, render_tables, ResultSet};
use digraph_probe::analysis::{aggregate, ordering_check, separation_check, Granularity, StepOutcome};
use digraph_probe::corpus::ComparisonGroup;

#[test]
fn published_means_separate_everywhere() {
    let s = separation_check(&common::per_model_cells()).unwrap();
    assert_eq!(s.checked, 15);
    assert_eq!(s.fraction, 1.0);
}

#[test]
fn published_means_order_with_first_step_tie() {
    let grand = aggregate(&common::per_model_cells(), Granularity::Grand).unwrap();
    let o = ordering_check(&grand).unwrap();
    assert!(o.passed());
    // Orig sits just below Para in the published grand means.
    assert_eq!(o.steps[0].outcome, StepOutcome::WithinTolerance);
    assert!(o.steps[1..].iter().all(|s| s.outcome == StepOutcome::Pass));
}

#[test]
fn per_model_table_reproduces_inputs() {
    let per_model = aggregate(&common::per_model_cells(), Granularity::PerModel).unwrap();
    assert_eq!(per_model.models(), common::MODELS.to_vec());
    for (t, vals) in common::PER_MODEL_MEANS {
        for (m, v) in common::MODELS.iter().zip(vals) {
            assert_eq!(per_model.row_for_model(m).unwrap().get(t), Some(v));
        }
    }
}

#[test]
fn cross_script_scale_trend() {
    let per_model = aggregate(&common::per_model_cells(), Granularity::PerModel).unwrap();
    let cso: Vec<f64> = common::MODELS
        .iter()
        .map(|m| per_model.row_for_model(m).unwrap().group_mean(ComparisonGroup::CrossScriptOrig).unwrap())
        .collect();
    assert!(cso.windows(2).all(|w| w[0] < w[1]), "{cso:?}");
}

#[test]
fn tables_from_flat_results() {
    let mut set = ResultSet::default();
    for (t, vals) in common::PER_MODEL_MEANS {
        for (m, v) in common::MODELS.iter().zip(vals) {
            set.results.extend(common::flat_results(m, 0, &[(t, v)].into_iter().collect()));
        }
    }
    let a = analyze(&set).unwrap();
    let tables = render_tables(&a).unwrap();
    let table1 = String::from_utf8(tables[0].1.clone()).unwrap();
    assert!(table1.contains("0.5764") && table1.contains("0.5904"), "{table1}");
}
