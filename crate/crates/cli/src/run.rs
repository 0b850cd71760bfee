//! The `run` command: execute one configured scenario and report it.

use std::collections::BTreeMap;

use biased_collapse_core::scenario::TwoLabScenario;

use crate::config::Scenario;
use crate::error::CliError;
use crate::report::{ReportFile, Row};

pub fn run_scenario(scenario: &Scenario, seed: u64) -> Result<ReportFile, CliError> {
    let rows: Vec<Row> = match scenario {
        Scenario::Trials(spec) => spec.run()?.rows.iter().map(Row::from).collect(),
        Scenario::TwoLab { policy, settings } => {
            let labels: Vec<&str> = settings.iter().map(String::as_str).collect();
            let lab = TwoLabScenario::correlated_qubits(*policy, &labels)?;
            lab.report_rows()?.iter().map(Row::from).collect()
        }
    };
    Ok(ReportFile::new("run", seed, BTreeMap::new(), rows))
}
