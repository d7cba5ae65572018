//! Orchestration: compile a problem, run the requested check, time it.

use std::time::Instant;

use fgla::criteria::{finiteness_check, CheckOptions, CriteriaError};
use fgla::prolong::tanaka_prolong_dims;

use crate::problem::{ProblemError, ProblemSpec, E_DIMENSION, E_IDEAL, E_KIND};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Decide finiteness.
    Check,
    /// Decide finiteness and attach the oracle dimension table.
    WithOracle,
    /// Only compute the dimension table.
    DimsOnly,
}

fn criteria_error(e: CriteriaError) -> ProblemError {
    let code = match e {
        CriteriaError::InvalidIdeal => E_IDEAL,
        CriteriaError::DimensionMismatch => E_DIMENSION,
        CriteriaError::KindExceedsBound { .. } => E_KIND,
    };
    ProblemError { code, message: e.to_string() }
}

pub fn run(spec: &ProblemSpec, mode: Mode) -> Result<Report, ProblemError> {
    let start = Instant::now();
    let compiled = spec.compile()?;
    let opts = CheckOptions {
        disable_shortcuts: spec.options.disable_shortcuts,
        force_general: spec.options.force_general,
        ..CheckOptions::default()
    };
    let report = match mode {
        Mode::DimsOnly => {
            let t = tanaka_prolong_dims(&compiled.ctx, &compiled.k, &compiled.lambda, spec.options.pmax);
            Report::from_dims_only(&t, compiled.warnings, elapsed_ms(start))
        }
        Mode::Check | Mode::WithOracle => {
            let v = finiteness_check(&compiled.ctx, &compiled.lambda, &compiled.k, &opts)
                .map_err(criteria_error)?;
            let dims = if mode == Mode::WithOracle {
                Some(tanaka_prolong_dims(
                    &compiled.ctx,
                    &compiled.k,
                    &compiled.lambda,
                    spec.options.pmax,
                ))
            } else {
                None
            };
            Report::from_verdict(&v, dims.as_ref(), compiled.warnings, elapsed_ms(start))
        }
    };
    Ok(report)
}

fn elapsed_ms(start: Instant) -> u64 {
    u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX)
}

/// Runs independent problems concurrently; results come back in input
/// order.
pub fn run_batch(specs: &[ProblemSpec], mode: Mode) -> Vec<Result<Report, ProblemError>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|spec| scope.spawn(move || run(spec, mode)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;

    #[test]
    fn check_and_oracle_modes() {
        let spec = preset("g2", None).unwrap();
        let r = run(&spec, Mode::Check).unwrap();
        assert_eq!(r.verdict, "FINITE");
        assert!(r.dims.is_none());

        let r = run(&spec, Mode::WithOracle).unwrap();
        let dims = r.dims.unwrap();
        assert_eq!(dims.total, 14);
        assert!(dims.stabilized_zero);
    }

    #[test]
    fn dims_only_mode() {
        let spec = preset("heisenberg", None).unwrap();
        let r = run(&spec, Mode::DimsOnly).unwrap();
        assert_eq!(r.route, "oracle");
        assert_eq!(r.verdict, "INFINITE-UP-TO-BOUND");
    }

    #[test]
    fn batch_preserves_order() {
        let specs: Vec<ProblemSpec> = ["ex3.6.1", "g2", "heisenberg"]
            .iter()
            .map(|n| preset(n, None).unwrap())
            .collect();
        let out = run_batch(&specs, Mode::Check);
        let verdicts: Vec<&str> =
            out.iter().map(|r| r.as_ref().unwrap().verdict.as_str()).collect();
        assert_eq!(verdicts, vec!["INFINITE", "FINITE", "INFINITE"]);
    }
}
