//! The problem-file model: what to check, in one JSON object.
//!
//! ```json
//! {
//!   "n": 4,
//!   "mu": 2,
//!   "lambda": "gl",
//!   "k": { "degree2": { "given_as": "perp", "matrices": [ ... ] } },
//!   "options": { "pmax": 6, "oracle": false }
//! }
//! ```
//!
//! `lambda` is a preset name (`gl`, `sl`, `so`, `sp`, `co`, `csp`) or one
//! of the keyed forms `{"o_form": M}`, `{"co_form": M}`, `{"o_space":
//! [M...]}`, `{"co_space": [M...]}`, `{"basis": [M...]}`.  `k` is a preset
//! (`free`, `heisenberg`, `full_wedge`) or an explicit description whose
//! degree-2 part is given either as the subspace itself or as its
//! trace-form annihilator in `o(V)` — the `given_as` flag is mandatory,
//! the two conventions are never guessed.  Higher-degree generators are
//! written on the Lyndon basis.  All rationals are exact: JSON integers
//! or strings `"p/q"`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use fgla::exactla::{rho_inv, MatrixSubspace, RatMatrix, RowSpace};
use fgla::freelie::{is_lyndon, FreeLieAlgebra, GradedIdeal, LieElement, LyndonWord};
use fgla::rat::Rat;

/// Largest `n` and `mu` the CLI accepts; the Lyndon tables and minor
/// ideals grow quickly beyond desk scale.
pub const MAX_DIM: usize = 8;
pub const MAX_KIND: usize = 8;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// A problem-file error with a stable machine-readable code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemError {
    pub code: &'static str,
    pub message: String,
}

impl ProblemError {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        ProblemError { code, message: message.into() }
    }
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.code, self.message)
    }
}

impl std::error::Error for ProblemError {}

pub const E_SCHEMA: &str = "schema";
pub const E_RATIONAL: &str = "rational";
pub const E_DIMENSION: &str = "dimension";
pub const E_KIND: &str = "kind";
pub const E_KIND_ONE: &str = "kind-one";
pub const E_LAMBDA: &str = "lambda";
pub const E_WORD: &str = "word";
pub const E_K2_FULL: &str = "k2-full";
pub const E_IDEAL: &str = "ideal-invalid";

// ---------------------------------------------------------------------------
// Exact rationals in JSON
// ---------------------------------------------------------------------------

/// A rational literal: a JSON integer or a string `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatSpec {
    Int(i64),
    Str(String),
}

impl RatSpec {
    pub fn parse(&self, field: &str) -> Result<Rat, ProblemError> {
        match self {
            RatSpec::Int(v) => Ok(fgla::rat::q(*v)),
            RatSpec::Str(s) => {
                let parsed = Rat::from_str(s.trim()).map_err(|_| {
                    ProblemError::new(
                        E_RATIONAL,
                        format!("{}: `{}` is not a rational (use an integer or \"p/q\")", field, s),
                    )
                })?;
                Ok(parsed)
            }
        }
    }
}

pub type MatrixSpec = Vec<Vec<RatSpec>>;

fn parse_matrix(m: &MatrixSpec, n: usize, field: &str) -> Result<RatMatrix, ProblemError> {
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(ProblemError::new(
            E_DIMENSION,
            format!("{}: expected an {}x{} matrix", field, n, n),
        ));
    }
    let mut out = RatMatrix::zeros(n, n);
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out.set(i, j, v.parse(&format!("{}[{}][{}]", field, i, j))?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Structure algebra
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaSpec {
    /// `gl`, `sl`, `so`, `sp`, `co`, `csp`.
    Preset(String),
    OForm { o_form: MatrixSpec },
    CoForm { co_form: MatrixSpec },
    OSpace { o_space: Vec<MatrixSpec> },
    CoSpace { co_space: Vec<MatrixSpec> },
    Basis { basis: Vec<MatrixSpec> },
}

impl LambdaSpec {
    fn compile(&self, n: usize) -> Result<MatrixSubspace, ProblemError> {
        match self {
            LambdaSpec::Preset(name) => match name.as_str() {
                "gl" => Ok(MatrixSubspace::gl(n)),
                "sl" => Ok(MatrixSubspace::sl(n)),
                "so" | "o" => Ok(MatrixSubspace::o(n)),
                "co" => Ok(MatrixSubspace::co(n)),
                "sp" => {
                    require_even(n, "lambda: sp")?;
                    Ok(MatrixSubspace::sp(n))
                }
                "csp" => {
                    require_even(n, "lambda: csp")?;
                    Ok(MatrixSubspace::csp(n))
                }
                other => Err(ProblemError::new(
                    E_LAMBDA,
                    format!("lambda: unknown preset `{}` (gl, sl, so, sp, co, csp)", other),
                )),
            },
            LambdaSpec::OForm { o_form } => {
                Ok(MatrixSubspace::o_of_form(&parse_matrix(o_form, n, "lambda.o_form")?))
            }
            LambdaSpec::CoForm { co_form } => {
                Ok(MatrixSubspace::co_of_form(&parse_matrix(co_form, n, "lambda.co_form")?))
            }
            LambdaSpec::OSpace { o_space } => {
                let forms = parse_matrices(o_space, n, "lambda.o_space")?;
                Ok(MatrixSubspace::o_of_space(n, &forms))
            }
            LambdaSpec::CoSpace { co_space } => {
                let forms = parse_matrices(co_space, n, "lambda.co_space")?;
                Ok(MatrixSubspace::co_of_space(n, &forms))
            }
            LambdaSpec::Basis { basis } => {
                if basis.is_empty() {
                    return Err(ProblemError::new(E_LAMBDA, "lambda.basis: empty basis"));
                }
                let mats = parse_matrices(basis, n, "lambda.basis")?;
                Ok(MatrixSubspace::span(n, mats))
            }
        }
    }
}

fn parse_matrices(
    specs: &[MatrixSpec],
    n: usize,
    field: &str,
) -> Result<Vec<RatMatrix>, ProblemError> {
    specs
        .iter()
        .enumerate()
        .map(|(i, m)| parse_matrix(m, n, &format!("{}[{}]", field, i)))
        .collect()
}

fn require_even(n: usize, field: &str) -> Result<(), ProblemError> {
    if n % 2 != 0 {
        return Err(ProblemError::new(
            E_DIMENSION,
            format!("{} needs even dimension, got n = {}", field, n),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// The ideal
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GivenAs {
    /// The matrices/wedges span `ρ(K_{-2})` itself.
    Subspace,
    /// The matrices/wedges span `K⊥`; `K_{-2}` is its annihilator.
    Perp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree2Spec {
    pub given_as: GivenAs,
    /// Antisymmetric `n x n` matrices, read through `ρ`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<MatrixSpec>,
    /// Coefficient vectors on the wedge basis `(e_i ∧ e_j)`, `i < j`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub wedges: Vec<Vec<RatSpec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub word: Vec<u8>,
    pub coeff: RatSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HigherGen {
    pub degree: usize,
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealSpec {
    /// `free`, `heisenberg`, `full_wedge`.
    Preset(String),
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree2: Option<Degree2Spec>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        higher: Vec<HigherGen>,
    },
}

impl IdealSpec {
    fn compile(
        &self,
        ctx: &FreeLieAlgebra,
        n: usize,
        mu: usize,
    ) -> Result<GradedIdeal, ProblemError> {
        let wedge_dim = fgla::exactla::wedge_dim(n);
        match self {
            IdealSpec::Preset(name) => match name.as_str() {
                "free" => Ok(GradedIdeal::free(n, mu)),
                "full_wedge" => {
                    if mu != 2 {
                        return Err(ProblemError::new(
                            E_KIND,
                            format!("k: full_wedge means kind 2, but mu = {}", mu),
                        ));
                    }
                    Ok(GradedIdeal::free(n, 2))
                }
                "heisenberg" => {
                    if mu != 2 {
                        return Err(ProblemError::new(
                            E_KIND,
                            format!("k: heisenberg has kind 2, but mu = {}", mu),
                        ));
                    }
                    require_even(n, "k: heisenberg")?;
                    let omega = fgla::exactla::standard_symplectic_form(n);
                    let row: Vec<Rat> = fgla::exactla::wedge_pairs(n)
                        .into_iter()
                        .map(|(i, j)| omega.at(i, j).clone())
                        .collect();
                    let ker = fgla::exactla::kernel_rows(&[row], wedge_dim);
                    let gens: Vec<(usize, LieElement)> =
                        ker.into_iter().map(|v| (2, ctx.element_from_coords(2, &v))).collect();
                    Ok(ctx.ideal_close(2, &gens))
                }
                other => Err(ProblemError::new(
                    E_SCHEMA,
                    format!("k: unknown preset `{}` (free, heisenberg, full_wedge)", other),
                )),
            },
            IdealSpec::Explicit { degree2, higher } => {
                if mu == 1 {
                    return Err(ProblemError::new(
                        E_KIND_ONE,
                        "k: kind 1 admits no proper generators; use the `free` preset",
                    ));
                }
                let mut gens: Vec<(usize, LieElement)> = Vec::new();
                if let Some(d2) = degree2 {
                    let mut rows: Vec<Vec<Rat>> = Vec::new();
                    for (i, m) in d2.matrices.iter().enumerate() {
                        let mat = parse_matrix(m, n, &format!("k.degree2.matrices[{}]", i))?;
                        let coords = rho_inv(&mat).map_err(|_| {
                            ProblemError::new(
                                E_DIMENSION,
                                format!("k.degree2.matrices[{}]: must be antisymmetric", i),
                            )
                        })?;
                        rows.push(coords);
                    }
                    for (i, w) in d2.wedges.iter().enumerate() {
                        if w.len() != wedge_dim {
                            return Err(ProblemError::new(
                                E_DIMENSION,
                                format!(
                                    "k.degree2.wedges[{}]: expected {} coefficients",
                                    i, wedge_dim
                                ),
                            ));
                        }
                        let coords: Result<Vec<Rat>, ProblemError> = w
                            .iter()
                            .enumerate()
                            .map(|(j, c)| c.parse(&format!("k.degree2.wedges[{}][{}]", i, j)))
                            .collect();
                        rows.push(coords?);
                    }
                    let span = RowSpace::from_rows(wedge_dim, rows);
                    let slice = match d2.given_as {
                        GivenAs::Subspace => span,
                        GivenAs::Perp => span.dot_complement(),
                    };
                    for v in slice.basis() {
                        gens.push((2, ctx.element_from_coords(2, v)));
                    }
                }
                for (gi, h) in higher.iter().enumerate() {
                    if h.degree < 2 || h.degree > mu {
                        return Err(ProblemError::new(
                            E_KIND,
                            format!(
                                "k.higher[{}]: degree {} outside 2..={}",
                                gi, h.degree, mu
                            ),
                        ));
                    }
                    let mut elem = LieElement::zero(h.degree);
                    for (ti, t) in h.terms.iter().enumerate() {
                        if t.word.len() != h.degree
                            || t.word.iter().any(|&l| l as usize >= n)
                            || !is_lyndon(&t.word)
                        {
                            return Err(ProblemError::new(
                                E_WORD,
                                format!(
                                    "k.higher[{}].terms[{}]: `{:?}` is not a Lyndon word of \
                                     degree {} on letters 0..{}",
                                    gi, ti, t.word, h.degree, n
                                ),
                            ));
                        }
                        let word = LyndonWord::new(t.word.clone()).unwrap();
                        elem.add_term(
                            word,
                            t.coeff.parse(&format!("k.higher[{}].terms[{}].coeff", gi, ti))?,
                        );
                    }
                    gens.push((h.degree, elem));
                }
                Ok(ctx.ideal_close(mu, &gens))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Options and the spec
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    #[serde(default = "default_pmax")]
    pub pmax: usize,
    /// Run the degreewise prolongation oracle and attach its table.
    #[serde(default)]
    pub oracle: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Disable the special-case shortcuts (the rank test still decides).
    #[serde(default)]
    pub disable_shortcuts: bool,
    /// Always run the combined-rank route, even for `Λ = gl`.
    #[serde(default)]
    pub force_general: bool,
}

fn default_pmax() -> usize {
    6
}

impl Default for Options {
    fn default() -> Self {
        Options {
            pmax: default_pmax(),
            oracle: false,
            format: None,
            disable_shortcuts: false,
            force_general: false,
        }
    }
}

/// A complete problem statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub n: usize,
    pub mu: usize,
    pub lambda: LambdaSpec,
    pub k: IdealSpec,
    #[serde(default)]
    pub options: Options,
}

/// A compiled problem, ready for the criterion.
#[derive(Debug)]
pub struct Compiled {
    pub ctx: FreeLieAlgebra,
    pub lambda: MatrixSubspace,
    pub k: GradedIdeal,
    pub warnings: Vec<String>,
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<ProblemSpec, ProblemError> {
        serde_json::from_str(text)
            .map_err(|e| ProblemError::new(E_SCHEMA, format!("problem file: {}", e)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }

    pub fn compile(&self) -> Result<Compiled, ProblemError> {
        if self.n < 2 || self.n > MAX_DIM {
            return Err(ProblemError::new(
                E_DIMENSION,
                format!("n: must be in 2..={}, got {}", MAX_DIM, self.n),
            ));
        }
        if self.mu < 1 || self.mu > MAX_KIND {
            return Err(ProblemError::new(
                E_KIND,
                format!("mu: must be in 1..={}, got {}", MAX_KIND, self.mu),
            ));
        }
        let ctx = FreeLieAlgebra::new(self.n, self.mu.max(2));
        let lambda = self.lambda.compile(self.n)?;
        if lambda.dim() == 0 {
            return Err(ProblemError::new(E_LAMBDA, "lambda: the structure algebra is zero"));
        }
        let k = self.k.compile(&ctx, self.n, self.mu)?;
        if self.mu >= 2 && k.slice(2).dim() == fgla::exactla::wedge_dim(self.n) {
            return Err(ProblemError::new(
                E_K2_FULL,
                "k.degree2: the slice is all of Λ²V, so the quotient has kind < 2",
            ));
        }
        if !ctx.validate_ideal(&k) {
            return Err(ProblemError::new(E_IDEAL, "k: not a graded ideal"));
        }
        let mut warnings = Vec::new();
        if !lambda.is_lie_closed() {
            // the criterion only uses the linear span; surface the fact
            // rather than failing or silently proceeding
            warnings.push(
                "lambda is not closed under the commutator; it is used as a linear \
                 subspace only"
                    .to_string(),
            );
        }
        Ok(Compiled { ctx, lambda, k, warnings })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal_preset_spec() {
        let spec = ProblemSpec::parse(
            r#"{"n": 2, "mu": 1, "lambda": "co", "k": "free"}"#,
        )
        .unwrap();
        assert_eq!(spec.n, 2);
        let c = spec.compile().unwrap();
        assert_eq!(c.lambda.dim(), 2);
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn malformed_rational_is_rejected() {
        let spec = ProblemSpec::parse(
            r#"{"n": 2, "mu": 2, "lambda": "gl",
                "k": {"degree2": {"given_as": "subspace", "wedges": [["1/0"]]}}}"#,
        )
        .unwrap();
        let err = spec.compile().unwrap_err();
        assert_eq!(err.code, E_RATIONAL);
        assert!(err.message.contains("wedges"));
    }

    #[test]
    fn schema_error_has_code() {
        let err = ProblemSpec::parse("{").unwrap_err();
        assert_eq!(err.code, E_SCHEMA);
    }

    #[test]
    fn full_wedge_needs_kind_two() {
        let spec =
            ProblemSpec::parse(r#"{"n": 3, "mu": 3, "lambda": "gl", "k": "full_wedge"}"#).unwrap();
        assert_eq!(spec.compile().unwrap_err().code, E_KIND);
    }

    #[test]
    fn kind_one_with_generators_is_rejected() {
        let spec = ProblemSpec::parse(
            r#"{"n": 2, "mu": 1, "lambda": "gl",
                "k": {"degree2": {"given_as": "subspace", "wedges": [["1"]]}}}"#,
        )
        .unwrap();
        assert_eq!(spec.compile().unwrap_err().code, E_KIND_ONE);
    }

    #[test]
    fn full_k2_is_rejected() {
        let spec = ProblemSpec::parse(
            r#"{"n": 2, "mu": 2, "lambda": "gl",
                "k": {"degree2": {"given_as": "subspace", "wedges": [["1"]]}}}"#,
        )
        .unwrap();
        assert_eq!(spec.compile().unwrap_err().code, E_K2_FULL);
    }

    #[test]
    fn bad_word_is_rejected() {
        let spec = ProblemSpec::parse(
            r#"{"n": 2, "mu": 3, "lambda": "gl",
                "k": {"higher": [{"degree": 3, "terms": [{"word": [1, 0, 0], "coeff": 1}]}]}}"#,
        )
        .unwrap();
        assert_eq!(spec.compile().unwrap_err().code, E_WORD);
    }

    #[test]
    fn non_closed_lambda_warns_but_compiles() {
        // span of a single nilpotent plus a rotation is not a subalgebra
        let spec = ProblemSpec::parse(
            r#"{"n": 2, "mu": 1, "lambda": {"basis": [
                    [[0, 1], [0, 0]],
                    [[0, 0], [1, 0]]
                ]}, "k": "free"}"#,
        )
        .unwrap();
        let c = spec.compile().unwrap();
        assert_eq!(c.warnings.len(), 1);
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = ProblemSpec::parse(
            r#"{"n": 4, "mu": 2, "lambda": "gl",
                "k": {"degree2": {"given_as": "perp",
                                  "matrices": [[[0,1,0,0],[-1,0,0,0],[0,0,0,0],[0,0,0,0]]]}},
                "options": {"pmax": 4, "oracle": true}}"#,
        )
        .unwrap();
        let again = ProblemSpec::parse(&spec.to_json()).unwrap();
        assert_eq!(spec, again);
    }
}
