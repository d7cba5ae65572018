//! Built-in example configurations.
//!
//! Each preset is an ordinary [`ProblemSpec`]; the catalogue doubles as a
//! regression corpus with known verdicts (see the acceptance suite and the
//! README table).

use crate::problem::{
    Degree2Spec, GivenAs, IdealSpec, LambdaSpec, MatrixSpec, Options, ProblemError, ProblemSpec,
    RatSpec, E_DIMENSION, E_SCHEMA,
};

pub const PRESET_NAMES: &[&str] = &[
    "ex3.6.1",
    "ex3.6.2",
    "ex3.7",
    "ex3.8",
    "ex4.8",
    "ex4.9",
    "heisenberg",
    "g2",
    "ex6.1",
];

fn mat(rows: &[&[i64]]) -> MatrixSpec {
    rows.iter().map(|r| r.iter().map(|&v| RatSpec::Int(v)).collect()).collect()
}

fn simple(n: usize, mu: usize, lambda: LambdaSpec, k: IdealSpec) -> ProblemSpec {
    ProblemSpec { n, mu, lambda, k, options: Options::default() }
}

/// Builds a preset by name; `n_override` resizes the presets that admit a
/// free dimension.
pub fn preset(name: &str, n_override: Option<usize>) -> Result<ProblemSpec, ProblemError> {
    let fixed = |want: Option<usize>, has: usize| -> Result<usize, ProblemError> {
        match want {
            None => Ok(has),
            Some(n) if n == has => Ok(has),
            Some(n) => Err(ProblemError {
                code: E_DIMENSION,
                message: format!("preset `{}` is fixed at n = {}, got n = {}", name, has, n),
            }),
        }
    };
    match name {
        // conformal plane: the classical infinite-dimensional surprise
        "ex3.6.1" => Ok(simple(
            fixed(n_override, 2)?,
            1,
            LambdaSpec::Preset("co".into()),
            IdealSpec::Preset("free".into()),
        )),
        // conformal algebra in dimension >= 3: finite
        "ex3.6.2" => {
            let n = n_override.unwrap_or(3);
            if n < 3 {
                return Err(ProblemError {
                    code: E_DIMENSION,
                    message: format!("preset `ex3.6.2` needs n >= 3, got {}", n),
                });
            }
            Ok(simple(n, 1, LambdaSpec::Preset("co".into()), IdealSpec::Preset("free".into())))
        }
        // block-conformal pairs on K^3 (blocks of size 2 and 1): infinite
        "ex3.7" => Ok(simple(
            fixed(n_override, 3)?,
            1,
            LambdaSpec::CoSpace {
                co_space: vec![
                    mat(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]),
                    mat(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
                ],
            },
            IdealSpec::Preset("free".into()),
        )),
        // symplectic algebra on K^4: infinite, with a rational witness
        "ex3.8" => {
            let n = n_override.unwrap_or(4);
            Ok(simple(n, 1, LambdaSpec::Preset("sp".into()), IdealSpec::Preset("free".into())))
        }
        // kind two on K^4 whose dual slice yields four square minors: finite
        "ex4.8" => Ok(simple(
            fixed(n_override, 4)?,
            2,
            LambdaSpec::Preset("gl".into()),
            IdealSpec::Explicit {
                degree2: Some(Degree2Spec {
                    given_as: GivenAs::Subspace,
                    matrices: vec![
                        mat(&[&[0, 0, 1, 0], &[0, 0, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 0]]),
                        mat(&[&[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0], &[0, -1, 0, 0]]),
                        mat(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[-1, 0, 0, 0]]),
                    ],
                    wedges: vec![],
                }),
                higher: vec![],
            },
        )),
        // kind two on K^4 whose rank drop exists only over the closure:
        // infinite, decided by the Groebner path
        "ex4.9" => Ok(simple(
            fixed(n_override, 4)?,
            2,
            LambdaSpec::Preset("gl".into()),
            IdealSpec::Explicit {
                degree2: Some(Degree2Spec {
                    given_as: GivenAs::Perp,
                    matrices: vec![
                        mat(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]),
                        mat(&[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]]),
                        mat(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]),
                    ],
                    wedges: vec![],
                }),
                higher: vec![],
            },
        )),
        // heisenberg algebra: one-dimensional centre, always infinite
        "heisenberg" => {
            let n = n_override.unwrap_or(2);
            Ok(simple(
                n,
                2,
                LambdaSpec::Preset("gl".into()),
                IdealSpec::Preset("heisenberg".into()),
            ))
        }
        // free of kind three on two generators; the 14-dimensional
        // exceptional prolongation
        "g2" => Ok(simple(
            fixed(n_override, 2)?,
            3,
            LambdaSpec::Preset("gl".into()),
            IdealSpec::Preset("free".into()),
        )),
        // mixed bilinear form with degenerate symmetric part on K^4:
        // infinite
        "ex6.1" => {
            let b = mat(&[&[1, 0, 0, 1], &[0, 1, 1, 0], &[0, -1, 0, 0], &[-1, 0, 0, 0]]);
            let b_antisym =
                mat(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[-1, 0, 0, 0]]);
            Ok(simple(
                fixed(n_override, 4)?,
                2,
                LambdaSpec::CoForm { co_form: b },
                IdealSpec::Explicit {
                    degree2: Some(Degree2Spec {
                        given_as: GivenAs::Perp,
                        matrices: vec![b_antisym],
                        wedges: vec![],
                    }),
                    higher: vec![],
                },
            ))
        }
        other => Err(ProblemError {
            code: E_SCHEMA,
            message: format!(
                "unknown preset `{}`; available: {}",
                other,
                PRESET_NAMES.join(", ")
            ),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_compile() {
        for name in PRESET_NAMES {
            let spec = preset(name, None).unwrap();
            spec.compile().unwrap_or_else(|e| panic!("preset {} failed: {}", name, e));
        }
    }

    #[test]
    fn presets_round_trip_through_json() {
        for name in PRESET_NAMES {
            let spec = preset(name, None).unwrap();
            let again = ProblemSpec::parse(&spec.to_json()).unwrap();
            assert_eq!(spec, again, "round trip failed for {}", name);
        }
    }

    #[test]
    fn dimension_overrides() {
        assert!(preset("ex3.6.2", Some(4)).is_ok());
        assert!(preset("ex3.6.2", Some(2)).is_err());
        assert!(preset("g2", Some(3)).is_err());
        assert!(preset("heisenberg", Some(4)).unwrap().compile().is_ok());
        assert!(preset("nope", None).is_err());
    }
}
