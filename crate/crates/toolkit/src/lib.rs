//! File formats, the built-in graph corpus, JSON reports and the `toolkit`
//! command line on top of `gaincurv-core`.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod report;
pub mod suites;

use gaincurv_core::curvature::{curvature_at, report_from_values, CurvatureReport};
use gaincurv_core::graph::Graph;
use gaincurv_core::Error as CoreError;
use rayon::prelude::*;

pub use error::{ToolError, ToolResult};
pub use formats::LabeledGraph;

/// Per-vertex curvature computed on the current rayon pool. Isolated
/// vertices get `None`.
pub fn curvature_report_parallel(g: &Graph) -> ToolResult<CurvatureReport> {
    let values = (0..g.vertex_count())
        .into_par_iter()
        .map(|x| match curvature_at(g, x) {
            Ok(k) => Ok(Some(k)),
            Err(CoreError::IsolatedVertex(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(report_from_values(g, values))
}
