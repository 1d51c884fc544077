//! Competing presentations of `M₂`, seeded random presentations, and the
//! ranking of resolutions by information score.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::free_algebra::{FreeElement, Word};
use crate::information::{fixed9, information_score, InfoReport};
use crate::linalg::Matrix;
use crate::matrix_rep::pauli;
use crate::resolution::{clifford_resolution, serialize, verify, FiniteFreeResolution};
use crate::scalar::{rational, Field};
use crate::{CycElement, CycTarget, Limits, ScalarMatrix};

/// Header line carried by every comparison.
pub const COMPARISON_SCOPE: &str = "catalog + sampled evidence, not a proof";

/// Draws before [`random_presentation`] gives up.
pub const MAX_DRAWS: usize = 1000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Provenance {
    Builtin(String),
    Random { seed: u64 },
    File(String),
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Builtin(name) => write!(f, "builtin:{name}"),
            Provenance::Random { seed } => write!(f, "random:{seed}"),
            Provenance::File(path) => write!(f, "file:{path}"),
        }
    }
}

/// Frozen `(raw, bog, score)` triple for an entry.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExpectedScore {
    pub raw_params: u64,
    pub bogoliubov_dim: u64,
    pub score: i64,
}

impl ExpectedScore {
    pub fn matches(&self, report: &InfoReport) -> bool {
        self.raw_params == report.raw_params
            && self.bogoliubov_dim == report.bogoliubov_dim
            && self.score == report.score
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct CatalogEntry {
    pub resolution: FiniteFreeResolution,
    pub provenance: Provenance,
    pub expected: Option<ExpectedScore>,
    /// Degree used by [`compare`] when no explicit degree is given.
    pub verify_degree: usize,
}

impl CatalogEntry {
    pub fn new(resolution: FiniteFreeResolution, provenance: Provenance) -> Self {
        let verify_degree = resolution.default_verify_degree();
        CatalogEntry { resolution, provenance, expected: None, verify_degree }
    }

    pub fn name(&self) -> &str {
        self.resolution.name()
    }

    fn with_expected(mut self, raw_params: u64, bogoliubov_dim: u64) -> Self {
        self.expected = Some(ExpectedScore {
            raw_params,
            bogoliubov_dim,
            score: raw_params as i64 - bogoliubov_dim as i64,
        });
        self
    }
}

fn c(n: i64) -> CycScalar {
    CycScalar::from(n)
}

fn elem(d: usize, terms: &[(&[usize], CycScalar)]) -> CycElement {
    FreeElement::from_terms(d, terms.iter().map(|(w, c)| (Word::new(w.to_vec()), c.clone())))
        .expect("letters within the alphabet")
}

fn unit_matrix(n: usize, r: usize, col: usize) -> ScalarMatrix {
    let mut m = Matrix::zeros(n, n);
    m.set(r, col, CycScalar::one());
    m
}

/// Fermionic presentation: `x² = 0`, `y² = 0`, `xy + yx = 1` with `x ↦ E₁₂`, `y ↦ E₂₁`.
pub fn car_resolution() -> Result<FiniteFreeResolution> {
    let target = CycTarget::new(2, vec![unit_matrix(2, 0, 1), unit_matrix(2, 1, 0)])?;
    let relations = vec![
        elem(2, &[(&[0, 0], c(1))]),
        elem(2, &[(&[1, 1], c(1))]),
        elem(2, &[(&[], c(-1)), (&[0, 1], c(1)), (&[1, 0], c(1))]),
    ];
    FiniteFreeResolution::new("car", vec![2, 3], vec![2], vec![relations], target)
}

/// `u ↦ iσ_x/√2`, `v ↦ iσ_y/√2` with `2u² + 1`, `2v² + 1`, `uv + vu`.
pub fn quaternion_resolution() -> Result<FiniteFreeResolution> {
    let [sx, sy, _] = pauli();
    let s = CycScalar::i().mul_ref(&CycScalar::inv_sqrt2());
    let target = CycTarget::new(2, vec![sx.scale(&s), sy.scale(&s)])?;
    let relations = vec![
        elem(2, &[(&[], c(1)), (&[0, 0], c(2))]),
        elem(2, &[(&[], c(1)), (&[1, 1], c(2))]),
        elem(2, &[(&[0, 1], c(1)), (&[1, 0], c(1))]),
    ];
    FiniteFreeResolution::new("quaternion", vec![2, 3], vec![2], vec![relations], target)
}

/// Generators `e_ab ↦ E_ab` (order E₁₁, E₁₂, E₂₁, E₂₂) with
/// `e_ab e_cd − δ_bc e_ad` for all 16 pairs and `e₁₁ + e₂₂ − 1`.
pub fn matrix_units_resolution() -> Result<FiniteFreeResolution> {
    let pairs = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let index = |a: usize, b: usize| a * 2 + b;
    let images = pairs.iter().map(|&(a, b)| unit_matrix(2, a, b)).collect();
    let target = CycTarget::new(2, images)?;
    let mut relations = Vec::with_capacity(17);
    for &(a, b) in &pairs {
        for &(cc, d) in &pairs {
            let mut r = elem(4, &[(&[index(a, b), index(cc, d)], c(1))]);
            if b == cc {
                r.add_term(Word::letter(index(a, d)), c(-1));
            }
            relations.push(r);
        }
    }
    relations.push(elem(4, &[(&[], c(-1)), (&[0], c(1)), (&[3], c(1))]));
    FiniteFreeResolution::new("matrix-units", vec![4, 17], vec![2], vec![relations], target)
}

/// The generator change carrying the Clifford relations of `M₂` onto the
/// CAR relations: `L = (1/√2)·[[1, −i], [1, i]]`.
pub fn clifford_to_car_transform() -> ScalarMatrix {
    let s = CycScalar::inv_sqrt2();
    let is = CycScalar::i().mul_ref(&s);
    Matrix::from_rows(vec![vec![s.clone(), -is.clone()], vec![s, is]]).expect("2x2")
}

/// The built-in comparison set, all presentations of `M₂`.
pub fn builtin_catalog(limits: &Limits) -> Result<Vec<CatalogEntry>> {
    let builtin = |res: FiniteFreeResolution| {
        let name = res.name().to_string();
        CatalogEntry::new(res, Provenance::Builtin(name))
    };
    let mut matrix_units = builtin(matrix_units_resolution()?).with_expected(357, 3);
    matrix_units.verify_degree = 3;
    Ok(vec![
        builtin(clifford_resolution(1, limits)?).with_expected(21, 1),
        builtin(car_resolution()?).with_expected(21, 1),
        builtin(quaternion_resolution()?).with_expected(21, 1),
        matrix_units,
    ])
}

/// Candidate matrix entries for random generator images.
fn sample_scalar(rng: &mut ChaCha8Rng) -> CycScalar {
    let half = CycScalar::from(rational(1, 2));
    let base = match rng.gen_range(0..5) {
        0 => CycScalar::zero(),
        1 => c(1),
        2 => CycScalar::i(),
        3 => half.clone(),
        _ => CycScalar::i().mul_ref(&half),
    };
    if rng.gen_bool(0.5) {
        -base
    } else {
        base
    }
}

/// A presentation of `M_n` with `d1` random generator images and the full
/// degree-2 kernel as relations. Deterministic in `seed`.
pub fn random_presentation(seed: u64, d1: usize, n: usize, limits: &Limits) -> Result<CatalogEntry> {
    if d1 < 2 || n == 0 {
        return Err(Error::Domain(format!("random presentation needs d1 ≥ 2 and n ≥ 1, got d1 = {d1}, n = {n}")));
    }
    if n > limits.max_matrix_size {
        return Err(Error::ResourceCap {
            what: "random target matrix size".into(),
            size: n.to_string(),
            cap: limits.max_matrix_size,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let images = (0..d1)
            .map(|_| Matrix::new(n, n, (0..n * n).map(|_| sample_scalar(&mut rng)).collect()))
            .collect::<Result<Vec<_>>>()?;
        let target = CycTarget::new(n, images)?;
        if target.generated_dimension(n * n + 1).dim != n * n {
            continue;
        }
        let relations = target.kernel_of_evaluation(2, limits.max_dim)?;
        let res = FiniteFreeResolution::new(
            format!("random-{seed}"),
            vec![d1, relations.len()],
            vec![2],
            vec![relations],
            target,
        )?;
        return Ok(CatalogEntry::new(res, Provenance::Random { seed }));
    }
    Err(Error::NoGeneratingSample { seed, attempts: MAX_DRAWS })
}

/// One ranked line of a comparison.
#[derive(Clone, PartialEq, Debug)]
pub struct ComparisonRow {
    pub name: String,
    pub provenance: String,
    pub verify_degree: usize,
    pub dims: Vec<usize>,
    pub degrees: Vec<usize>,
    pub info: InfoReport,
    pub is_min: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FailedEntry {
    pub name: String,
    pub reason: String,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ComparisonReport {
    pub scope: String,
    /// Verified entries sorted by score, then name.
    pub ranked: Vec<ComparisonRow>,
    /// Entries excluded from the ranking.
    pub failed: Vec<FailedEntry>,
}

impl ComparisonReport {
    pub fn minimum(&self) -> Option<i64> {
        self.ranked.first().map(|r| r.info.score)
    }

    pub fn row(&self, name: &str) -> Option<&ComparisonRow> {
        self.ranked.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> Value {
        let ranked: Vec<Value> = self
            .ranked
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "provenance": r.provenance,
                    "verified": true,
                    "verify_degree": r.verify_degree,
                    "dims": r.dims,
                    "degrees": r.degrees,
                    "raw_params": r.info.raw_params,
                    "bogoliubov_dim": r.info.bogoliubov_dim,
                    "score": r.info.score,
                    "s_numbers": fixed9(r.info.s_numbers),
                    "min": r.is_min,
                })
            })
            .collect();
        let failed: Vec<Value> = self
            .failed
            .iter()
            .map(|f| json!({"name": f.name, "verified": false, "reason": f.reason}))
            .collect();
        json!({"scope": self.scope, "ranked": ranked, "failed": failed})
    }
}

fn assess(entry: &CatalogEntry, degree: Option<usize>, limits: &Limits) -> std::result::Result<ComparisonRow, FailedEntry> {
    let res = &entry.resolution;
    let fail = |reason: String| FailedEntry { name: res.name().to_string(), reason };
    let degree = degree.unwrap_or(entry.verify_degree);
    let report = verify(res, degree, limits).map_err(|e| fail(e.to_string()))?;
    if !report.passed() {
        let mut reasons = Vec::new();
        if !report.surjective {
            reasons.push(format!("not surjective (generated dim {} < {})", report.generated_dim, report.algebra_dim));
        }
        if !report.relations_vanish {
            reasons.push(format!("relations {:?} do not vanish", report.nonvanishing_relations));
        }
        for (k, check) in &report.exactness_by_degree {
            if check.kernel_dim != check.ideal_dim {
                reasons.push(format!(
                    "degree {k}: kernel dim {} ≠ ideal dim {}",
                    check.kernel_dim, check.ideal_dim
                ));
            }
        }
        if report.chain_composable == Some(false) {
            reasons.push("relation chain does not compose to zero".into());
        }
        return Err(fail(reasons.join("; ")));
    }
    let info = information_score(res, limits).map_err(|e| fail(e.to_string()))?;
    Ok(ComparisonRow {
        name: res.name().to_string(),
        provenance: entry.provenance.to_string(),
        verify_degree: degree,
        dims: res.dims().to_vec(),
        degrees: res.degrees().to_vec(),
        info,
        is_min: false,
    })
}

/// Verifies and scores every entry, ranking the verified ones by score.
///
/// `degree = None` uses each entry's own verification degree.
pub fn compare(entries: &[CatalogEntry], degree: Option<usize>, limits: &Limits) -> ComparisonReport {
    let outcomes: Vec<_> = entries.par_iter().map(|e| assess(e, degree, limits)).collect();
    let mut ranked = Vec::new();
    let mut failed = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(row) => ranked.push(row),
            Err(f) => failed.push(f),
        }
    }
    ranked.sort_by(|a, b| a.info.score.cmp(&b.info.score).then_with(|| a.name.cmp(&b.name)));
    if let Some(min) = ranked.first().map(|r| r.info.score) {
        for row in ranked.iter_mut() {
            row.is_min = row.info.score == min;
        }
    }
    ComparisonReport { scope: COMPARISON_SCOPE.to_string(), ranked, failed }
}

/// File names and contents for a catalog directory: one resolution document
/// per entry plus `index.json`.
pub fn catalog_files(entries: &[CatalogEntry]) -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = entries
        .iter()
        .map(|e| (format!("{}.json", e.name()), serialize(&e.resolution)))
        .collect();
    let names: Vec<&str> = entries.iter().map(CatalogEntry::name).collect();
    let mut index = serde_json::to_string_pretty(&json!({ "entries": names })).expect("index");
    index.push('\n');
    files.push(("index.json".to_string(), index));
    files
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_algebra::DEFAULT_MAX_DIM;
    use crate::linalg::EchelonSpan;
    use crate::free_algebra::enumerate_words;

    #[test]
    fn builtin_catalog_shapes() {
        let cat = builtin_catalog(&Limits::default()).unwrap();
        let names: Vec<&str> = cat.iter().map(CatalogEntry::name).collect();
        assert_eq!(names, vec!["clifford-m1", "car", "quaternion", "matrix-units"]);
        assert_eq!(cat[0].resolution, clifford_resolution(1, &Limits::default()).unwrap());
        let mu = &cat[3].resolution;
        assert_eq!(mu.dims(), &[4, 17]);
        assert_eq!(mu.degrees(), &[2]);
    }

    #[test]
    fn car_kernel_contains_its_relations() {
        let car = car_resolution().unwrap();
        let kernel = car.target().kernel_of_evaluation(2, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(kernel.len(), 3);
        let basis = enumerate_words(2, 2, DEFAULT_MAX_DIM).unwrap();
        let mut span = EchelonSpan::new(basis.len());
        for k in &kernel {
            span.insert(k.to_coordinates(&basis).unwrap());
        }
        for r in car.relations() {
            assert!(span.contains(&r.to_coordinates(&basis).unwrap()));
        }
    }

    #[test]
    fn matrix_units_kernel_dimension() {
        let mu = matrix_units_resolution().unwrap();
        let kernel = mu.target().kernel_of_evaluation(2, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(kernel.len(), 17);
        for r in mu.relations() {
            assert!(mu.target().evaluate(r).unwrap().is_zero());
        }
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_presentation(42, 2, 2, &Limits::default()).unwrap();
        let b = random_presentation(42, 2, 2, &Limits::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.resolution.dims(), &[2, 3]);
        assert_eq!(a.provenance, Provenance::Random { seed: 42 });
        assert!(random_presentation(1, 1, 2, &Limits::default()).is_err());
    }

    #[test]
    fn singleton_comparison() {
        let entry = CatalogEntry::new(clifford_resolution(1, &Limits::default()).unwrap(), Provenance::Builtin("c".into()));
        let report = compare(&[entry], None, &Limits::default());
        assert_eq!(report.ranked.len(), 1);
        assert!(report.ranked[0].is_min);
        assert_eq!(report.minimum(), Some(20));
        assert!(compare(&[], None, &Limits::default()).ranked.is_empty());
    }

    #[test]
    fn failing_entry_is_listed_separately() {
        let res = clifford_resolution(1, &Limits::default()).unwrap();
        let mut rels = res.relations().to_vec();
        rels.pop();
        let partial = FiniteFreeResolution::new("partial", vec![2, 2], vec![2], vec![rels], res.target().clone()).unwrap();
        let report = compare(&[CatalogEntry::new(partial, Provenance::Builtin("partial".into()))], None, &Limits::default());
        assert!(report.ranked.is_empty());
        assert_eq!(report.failed.len(), 1);
        assert!(report.failed[0].reason.contains("kernel dim"), "{}", report.failed[0].reason);
    }

    #[test]
    fn catalog_files_have_index() {
        let cat = builtin_catalog(&Limits::default()).unwrap();
        let files = catalog_files(&cat);
        assert_eq!(files.len(), 5);
        assert_eq!(files[4].0, "index.json");
        assert!(files[4].1.contains("\"matrix-units\""));
    }
}
