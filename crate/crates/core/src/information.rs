//! Information measures of a finite free resolution: the entropy of its
//! discrete data, the raw count of continuous parameters in the relation
//! maps, the dimension of the Bogoliubov (lifting) Lie algebra, and the
//! resulting score. Also the lower bounds for presentations of `M_n`.

use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Number, Value};

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::free_algebra::{enumerate_words, filtration_dim};
use crate::linalg::Matrix;
use crate::resolution::FiniteFreeResolution;
use crate::{CycElement, CycTarget, Limits, ScalarMatrix};

/// The individual `ln` terms of the numeric entropy.
#[derive(Clone, PartialEq, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropyBreakdown {
    pub ln_length: f64,
    pub ln_dims: Vec<f64>,
    pub ln_degrees: Vec<f64>,
}

impl EntropyBreakdown {
    pub fn total(&self) -> f64 {
        std::iter::once(&self.ln_length)
            .chain(&self.ln_dims)
            .chain(&self.ln_degrees)
            .sum()
    }
}

/// Measured information content of a resolution.
#[derive(Clone, PartialEq, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfoReport {
    /// `ln N + Σ ln d_j + Σ ln ∂_j` (nats).
    pub s_numbers: f64,
    /// Complex parameters needed to write down the relation maps.
    pub raw_params: u64,
    pub bogoliubov_dim: u64,
    /// `raw_params − bogoliubov_dim`.
    pub score: i64,
    pub breakdown: EntropyBreakdown,
}

impl InfoReport {
    /// The parameter count in real units (two per complex entry).
    pub fn real_params(&self) -> u64 {
        2 * self.raw_params
    }

    pub fn to_json(&self) -> Value {
        json!({
            "s_numbers": fixed9(self.s_numbers),
            "raw_params": self.raw_params,
            "bogoliubov_dim": self.bogoliubov_dim,
            "score": self.score,
            "breakdown": {
                "ln_length": fixed9(self.breakdown.ln_length),
                "ln_dims": self.breakdown.ln_dims.iter().copied().map(fixed9).collect::<Vec<_>>(),
                "ln_degrees": self.breakdown.ln_degrees.iter().copied().map(fixed9).collect::<Vec<_>>(),
            },
        })
    }
}

impl Serialize for InfoReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// A JSON number printed with exactly nine decimals.
pub fn fixed9(x: f64) -> Value {
    Value::Number(Number::from_str(&format!("{x:.9}")).expect("finite float"))
}

/// `S_numbers` with its breakdown, from the exact integer data.
pub fn entropy_numbers(res: &FiniteFreeResolution) -> Result<(f64, EntropyBreakdown)> {
    if let Some(j) = res.dims().iter().position(|&d| d == 0) {
        return Err(Error::Domain(format!("ln d_{} undefined: d_{} = 0", j + 1, j + 1)));
    }
    if let Some(j) = res.degrees().iter().position(|&d| d == 0) {
        return Err(Error::Domain(format!("ln ∂_{} undefined: ∂_{} = 0", j + 1, j + 1)));
    }
    let ln = |k: usize| (k as f64).ln();
    let breakdown = EntropyBreakdown {
        ln_length: ln(res.length()),
        ln_dims: res.dims().iter().map(|&d| ln(d)).collect(),
        ln_degrees: res.degrees().iter().map(|&d| ln(d)).collect(),
    };
    Ok((breakdown.total(), breakdown))
}

/// `Σ_{j=2}^{N} d_j · dim ℱ_{∂_{j−1}}(d_{j−1})`.
pub fn raw_parameter_count(res: &FiniteFreeResolution) -> Result<u64> {
    let mut total: u64 = 0;
    for j in 2..=res.length() {
        let dj = res.dims()[j - 1];
        let space = filtration_dim(res.dims()[j - 2], res.degrees()[j - 2]);
        let term = space
            .and_then(|s| (s as u64).checked_mul(dj as u64))
            .and_then(|t| total.checked_add(t));
        total = term.ok_or_else(|| Error::ResourceCap {
            what: format!("parameter count at level {j}"),
            size: "overflow".into(),
            cap: usize::MAX,
        })?;
    }
    Ok(total)
}

/// Basis of the Lie algebra of graded linear maps `(X₁, …, X_N)` whose
/// derivations carry every relation map into itself.
#[derive(Clone, PartialEq, Debug)]
pub struct BogoliubovSolution {
    pub dimension: usize,
    /// Each tuple holds `X_j` of size `d_j × d_j` for `j = 1..=N`.
    pub basis: Vec<Vec<ScalarMatrix>>,
}

/// `D_{X_{j−1}}(ρ_{j,k}) − Σ_l (X_j)[l][k] ρ_{j,l}` for every level `j ≥ 2` and index `k`.
pub fn lifting_residuals(res: &FiniteFreeResolution, tuple: &[ScalarMatrix]) -> Result<Vec<CycElement>> {
    if tuple.len() != res.length() {
        return Err(Error::DimensionMismatch(format!(
            "tuple of {} maps for a resolution of length {}",
            tuple.len(),
            res.length()
        )));
    }
    let mut out = Vec::new();
    for (level, rels) in res.relation_levels().iter().enumerate() {
        let lower = &tuple[level];
        let upper = &tuple[level + 1];
        if upper.rows() != rels.len() || !upper.is_square() {
            return Err(Error::DimensionMismatch(format!("X_{} has the wrong size", level + 2)));
        }
        for (k, rho) in rels.iter().enumerate() {
            let mut r = rho.derivation(lower)?;
            for (l, other) in rels.iter().enumerate() {
                r = r.sub(&other.scale(upper.get(l, k)))?;
            }
            out.push(r);
        }
    }
    Ok(out)
}

/// Solves the linearized lifting system exactly.
pub fn bogoliubov_dimension(res: &FiniteFreeResolution, limits: &Limits) -> Result<BogoliubovSolution> {
    let dims = res.dims();
    let mut offsets = Vec::with_capacity(dims.len() + 1);
    let mut unknowns = 0usize;
    for &d in dims {
        offsets.push(unknowns);
        unknowns += d * d;
    }
    if unknowns > limits.max_dim {
        return Err(Error::ResourceCap {
            what: "Bogoliubov unknowns".into(),
            size: unknowns.to_string(),
            cap: limits.max_dim,
        });
    }

    let mut rows: Vec<Vec<CycScalar>> = Vec::new();
    for (level, rels) in res.relation_levels().iter().enumerate() {
        let d_lower = dims[level];
        let d_upper = dims[level + 1];
        let basis = enumerate_words(d_lower, res.degrees()[level], limits.max_dim)?;
        let equations = basis.len() * d_upper;
        if rows.len() + equations > limits.max_dim {
            return Err(Error::ResourceCap {
                what: "Bogoliubov equations".into(),
                size: (rows.len() + equations).to_string(),
                cap: limits.max_dim,
            });
        }
        let rel_coords = rels
            .iter()
            .map(|r| r.to_coordinates(&basis))
            .collect::<Result<Vec<_>>>()?;
        for (k, rho) in rels.iter().enumerate() {
            // columns: coordinates contributed by each unknown
            let mut columns: Vec<(usize, Vec<CycScalar>)> = Vec::new();
            for p in 0..d_lower {
                for q in 0..d_lower {
                    let mut unit = Matrix::zeros(d_lower, d_lower);
                    unit.set(p, q, CycScalar::one());
                    let image = rho.derivation(&unit)?;
                    if !image.is_zero() {
                        columns.push((offsets[level] + p * d_lower + q, image.to_coordinates(&basis)?));
                    }
                }
            }
            for (l, coords) in rel_coords.iter().enumerate() {
                let negated = coords.iter().map(|c| -c.clone()).collect();
                columns.push((offsets[level + 1] + l * d_upper + k, negated));
            }
            for coord in 0..basis.len() {
                let mut row = vec![CycScalar::zero(); unknowns];
                for (col, values) in &columns {
                    if !values[coord].is_zero() {
                        row[*col] += &values[coord];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }

    let system = if rows.is_empty() {
        Matrix::zeros(0, unknowns)
    } else {
        Matrix::from_rows(rows)?
    };
    let (_, kernel) = system.rank_and_kernel();
    let basis = kernel
        .iter()
        .map(|v| {
            dims.iter()
                .zip(&offsets)
                .map(|(&d, &off)| Matrix::new(d, d, v[off..off + d * d].to_vec()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BogoliubovSolution { dimension: basis.len(), basis })
}

/// Entropy, raw parameter count, Bogoliubov dimension and score.
pub fn information_score(res: &FiniteFreeResolution, limits: &Limits) -> Result<InfoReport> {
    let (s_numbers, breakdown) = entropy_numbers(res)?;
    let raw_params = raw_parameter_count(res)?;
    let bogoliubov_dim = bogoliubov_dimension(res, limits)?.dimension as u64;
    Ok(InfoReport {
        s_numbers,
        raw_params,
        bogoliubov_dim,
        score: raw_params as i64 - bogoliubov_dim as i64,
        breakdown,
    })
}

/// Lower bounds on any presentation of `M_n` with the given generator images.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LowerBoundReport {
    pub n: usize,
    pub generators: usize,
    pub surjective: bool,
    pub generated_dim: usize,
    /// Whether two matrix units fail to commute (`n ≥ 2`).
    pub noncommutative: bool,
    /// Generated dimension of each supplied image on its own.
    pub single_generator_dims: Vec<usize>,
    pub min_generators: usize,
    /// Smallest `D ≥ 1` with a nonzero relation in `ℱ_D`.
    pub min_relation_degree: Option<usize>,
    /// `dim(ker f₁ ∩ ℱ₂)` for the supplied images.
    pub min_relations_at_degree_2: usize,
}

pub fn lower_bound_checks(target: &CycTarget, limits: &Limits) -> Result<LowerBoundReport> {
    let n = target.n();
    let algebra_dim = target.algebra_dim();
    let generated = target.generated_dimension(algebra_dim + 1);

    let noncommutative = n >= 2 && {
        let mut e12 = Matrix::zeros(n, n);
        e12.set(0, 1, CycScalar::one());
        let e21 = e12.transpose();
        e12.mul(&e21)? != e21.mul(&e12)?
    };
    let single_generator_dims: Vec<usize> = target
        .generator_images()
        .iter()
        .map(|g| {
            CycTarget::new(n, vec![g.clone()])
                .expect("image of the right size")
                .generated_dimension(algebra_dim + 1)
                .dim
        })
        .collect();
    // One matrix generates a commutative algebra (dimension ≤ n by
    // Cayley–Hamilton), so a noncommutative M_n needs two.
    let min_generators = if noncommutative { 2 } else { 1 };
    debug_assert!(!noncommutative || single_generator_dims.iter().all(|&d| d < algebra_dim));

    let d = target.num_generators();
    let mut min_relation_degree = None;
    if d > 0 {
        let search = (1..=algebra_dim + 1).find(|&k| filtration_dim(d, k).is_none_or(|s| s > algebra_dim));
        let top = search.unwrap_or(algebra_dim + 1);
        let images = target.image_dims_by_degree(top, limits.max_dim)?;
        min_relation_degree = (1..=top).find(|&k| {
            let space = filtration_dim(d, k).expect("enumerated");
            images[k] < space
        });
    }
    let at_two = target.kernel_of_evaluation(2, limits.max_dim)?.len();

    Ok(LowerBoundReport {
        n,
        generators: d,
        surjective: generated.dim == algebra_dim,
        generated_dim: generated.dim,
        noncommutative,
        single_generator_dims,
        min_generators,
        min_relation_degree,
        min_relations_at_degree_2: at_two,
    })
}
