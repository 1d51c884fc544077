//! Finite free resolutions of matrix algebras: the data structure, the
//! Clifford constructor, truncated exactness checks and JSON persistence.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::free_algebra::{enumerate_words, filtration_dim, FreeElement, Word};
use crate::linalg::{EchelonSpan, Matrix};
use crate::matrix_rep::{pauli, MatrixAlgebraTarget};
use crate::scalar::Field;
use crate::{CycElement, CycTarget, Limits};

/// A resolution `… → F a₂ → F a₁ → M_n` with finitely many terms.
///
/// `relations[j - 2]` holds the images `f_j∘i_j` of the basis of `a_j`
/// (for `j = 2..=N`), each an element of `ℱ_{∂_{j-1}} F a_{j-1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct FiniteFreeResolution {
    name: String,
    dims: Vec<usize>,
    degrees: Vec<usize>,
    relations: Vec<Vec<CycElement>>,
    target: CycTarget,
}

impl FiniteFreeResolution {
    pub fn new(
        name: impl Into<String>,
        dims: Vec<usize>,
        degrees: Vec<usize>,
        relations: Vec<Vec<CycElement>>,
        target: CycTarget,
    ) -> Result<Self> {
        let res = FiniteFreeResolution { name: name.into(), dims, degrees, relations, target };
        let breaches = res.breaches();
        if breaches.is_empty() {
            Ok(res)
        } else {
            Err(Error::Validation(breaches))
        }
    }

    /// A length-2 resolution with `∂₁` set to the largest relation degree
    /// (at least 1).
    pub fn presentation(
        name: impl Into<String>,
        relations: Vec<CycElement>,
        target: CycTarget,
    ) -> Result<Self> {
        let d1 = target.num_generators();
        let degree = relations.iter().filter_map(FreeElement::degree).max().unwrap_or(0).max(1);
        Self::new(name, vec![d1, relations.len()], vec![degree], vec![relations], target)
    }

    /// The free resolution `F a₁ → b` with no relations (`N = 1`).
    pub fn relation_free(name: impl Into<String>, target: CycTarget) -> Result<Self> {
        let d = target.num_generators();
        Self::new(name, vec![d], vec![], vec![], target)
    }

    fn breaches(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.dims.len();
        if n == 0 {
            out.push("dims: a resolution needs at least one term (N ≥ 1)".to_string());
        }
        let levels = n.saturating_sub(1);
        if self.degrees.len() != levels {
            out.push(format!(
                "degrees: expected {levels} entries (N − 1), got {}",
                self.degrees.len()
            ));
        }
        if self.relations.len() != levels {
            out.push(format!(
                "relations: expected {levels} levels (N − 1), got {}",
                self.relations.len()
            ));
        }
        if let Some(&d1) = self.dims.first() {
            if self.target.num_generators() != d1 {
                out.push(format!(
                    "target.generator_images: expected d₁ = {d1} images, got {}",
                    self.target.num_generators()
                ));
            }
        }
        for (i, level) in self.relations.iter().enumerate() {
            let j = i + 2;
            let (Some(&dj), Some(&alphabet)) = (self.dims.get(j - 1), self.dims.get(j - 2)) else {
                continue;
            };
            if level.len() != dj {
                out.push(format!(
                    "relations[{i}]: level {j} needs d_{j} = {dj} images, got {}",
                    level.len()
                ));
            }
            let bound = self.degrees.get(j - 2).copied();
            for (k, r) in level.iter().enumerate() {
                if r.alphabet_size() != alphabet {
                    out.push(format!(
                        "relations[{i}][{k}]: alphabet {} but d_{} = {alphabet}",
                        r.alphabet_size(),
                        j - 1
                    ));
                }
                if let (Some(deg), Some(bound)) = (r.degree(), bound) {
                    if deg > bound {
                        out.push(format!(
                            "relations[{i}][{k}]: degree {deg} exceeds ∂_{} = {bound}",
                            j - 1
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The length `N`.
    pub fn length(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// All levels `j = 2..=N` of relation images.
    pub fn relation_levels(&self) -> &[Vec<CycElement>] {
        &self.relations
    }

    /// Level-2 relation images (empty for `N = 1`).
    pub fn relations(&self) -> &[CycElement] {
        self.relations.first().map_or(&[], Vec::as_slice)
    }

    pub fn target(&self) -> &CycTarget {
        &self.target
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Default verification degree `max(∂) + 2`.
    pub fn default_verify_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0) + 2
    }

    /// Applies the generator change `e_k ↦ Σ_p L[p][k] e_p`: level-2 relations
    /// go through the induced endomorphism and the generator images are
    /// adjusted so that the transformed relations still evaluate to zero.
    pub fn transformed(&self, l: &Matrix<CycScalar>) -> Result<Self> {
        let target = self.target.transformed(l)?;
        let mut relations = self.relations.clone();
        if let Some(level) = relations.first_mut() {
            for r in level.iter_mut() {
                *r = r.induced_endomorphism(l)?;
            }
        }
        Self::new(self.name.clone(), self.dims.clone(), self.degrees.clone(), relations, target)
    }
}

/// The Clifford resolution of `M_{2^m}`: `2m` generators mapped to `γ_k/√2`
/// and the `m(2m+1)` relations `e_k e_l + e_l e_k − δ_kl`, `k ≤ l`.
pub fn clifford_resolution(m: usize, limits: &Limits) -> Result<FiniteFreeResolution> {
    if m == 0 {
        return Err(Error::Domain("Clifford resolution needs m ≥ 1".into()));
    }
    let n = u32::try_from(m)
        .ok()
        .and_then(|m| 1usize.checked_shl(m))
        .filter(|&n| n <= limits.max_matrix_size);
    let Some(n) = n else {
        return Err(Error::ResourceCap {
            what: format!("matrix size 2^{m}"),
            size: format!("2^{m}"),
            cap: limits.max_matrix_size,
        });
    };
    let d = 2 * m;
    let s = CycScalar::inv_sqrt2();
    let images = gamma_matrices(m).into_iter().map(|g| g.scale(&s)).collect();
    let target = MatrixAlgebraTarget::new(n, images)?;

    let mut relations = Vec::with_capacity(m * (2 * m + 1));
    for k in 0..d {
        for l in k..d {
            let mut r = FreeElement::zero(d);
            r.add_term(Word::new(vec![k, l]), CycScalar::one());
            r.add_term(Word::new(vec![l, k]), CycScalar::one());
            if k == l {
                r.add_term(Word::unit(), -CycScalar::one());
            }
            relations.push(r);
        }
    }
    FiniteFreeResolution::new(
        format!("clifford-m{m}"),
        vec![d, relations.len()],
        vec![2],
        vec![relations],
        target,
    )
}

/// Jordan–Wigner gamma matrices: `γ_{2j} = σ_z^{⊗j} ⊗ σ_x ⊗ I^{⊗(m−j−1)}` and
/// `γ_{2j+1}` the same with `σ_y` (0-based `j`).
pub fn gamma_matrices(m: usize) -> Vec<Matrix<CycScalar>> {
    let [sx, sy, sz] = pauli();
    let id = Matrix::identity(2);
    let mut out = Vec::with_capacity(2 * m);
    for j in 0..m {
        for middle in [&sx, &sy] {
            let mut g = Matrix::identity(1);
            for slot in 0..m {
                let factor = match slot.cmp(&j) {
                    std::cmp::Ordering::Less => &sz,
                    std::cmp::Ordering::Equal => middle,
                    std::cmp::Ordering::Greater => &id,
                };
                g = g.kron(factor);
            }
            out.push(g);
        }
    }
    out
}

/// A subspace of `ℱ_D` spanned by the truncated two-sided ideal.
#[derive(Clone, Debug)]
pub struct IdealTruncation<F> {
    pub degree: usize,
    pub dim: usize,
    /// Dimension of the truncated ideal inside `ℱ_k` for `k = 0..=degree`.
    pub dims_by_degree: Vec<usize>,
    /// Echelon basis against the length-lex word basis.
    pub basis: Vec<FreeElement<F>>,
}

/// Span of `u·r·v` over relations `r` and words `u`, `v` with
/// `|u| + deg r + |v| ≤ degree`, computed inside `ℱ_degree` over `d` letters.
pub fn ideal_truncation<F: Field>(
    d: usize,
    relations: &[FreeElement<F>],
    degree: usize,
    max_dim: usize,
) -> Result<IdealTruncation<F>> {
    for r in relations {
        if r.alphabet_size() != d {
            return Err(Error::AlphabetMismatch { expected: d, actual: r.alphabet_size() });
        }
        if let Some(deg) = r.degree() {
            if deg > degree {
                return Err(Error::DegreeOverflow { degree: deg, max: degree });
            }
        }
    }
    let basis = enumerate_words(d, degree, max_dim)?;
    let mut span = EchelonSpan::new(basis.len());
    let mut dims = Vec::with_capacity(degree + 1);
    for total in 0..=degree {
        for r in relations {
            let Some(rd) = r.degree() else { continue };
            if rd > total {
                continue;
            }
            let outer = total - rd;
            for left in 0..=outer {
                for u in basis.words_of_length(left) {
                    for v in basis.words_of_length(outer - left) {
                        if span.is_full() {
                            break;
                        }
                        span.insert(r.sandwich(u, v).to_coordinates(&basis)?);
                    }
                }
            }
        }
        dims.push(span.rank());
    }
    let elements = span
        .basis()
        .iter()
        .map(|v| FreeElement::from_coordinates(v, &basis))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealTruncation { degree, dim: span.rank(), dims_by_degree: dims, basis: elements })
}

/// Kernel and ideal dimensions inside `ℱ_k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DegreeCheck {
    pub kernel_dim: usize,
    pub ideal_dim: usize,
    /// The two subspaces coincide: the ideal lies in the kernel (all relations
    /// vanish) and the dimensions agree.
    pub equal: bool,
}

/// Outcome of [`verify`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub degree: usize,
    pub surjective: bool,
    pub generated_dim: usize,
    pub algebra_dim: usize,
    pub stabilization_degree: Option<usize>,
    pub relations_vanish: bool,
    /// Indices of level-2 relations that do not evaluate to zero.
    pub nonvanishing_relations: Vec<usize>,
    pub exactness_by_degree: BTreeMap<usize, DegreeCheck>,
    /// For `N > 2`: every level-j image (j ≥ 3) maps to zero under level j−1.
    pub chain_composable: Option<bool>,
}

impl VerificationReport {
    pub fn exact(&self) -> bool {
        self.exactness_by_degree.values().all(|c| c.equal)
    }

    pub fn passed(&self) -> bool {
        self.surjective && self.relations_vanish && self.exact() && self.chain_composable != Some(false)
    }
}

/// Checks surjectivity onto `M_n`, vanishing of the relations, and equality of
/// `ker f₁ ∩ ℱ_k` with the truncated relation ideal for `k = 1..=degree`.
pub fn verify(res: &FiniteFreeResolution, degree: usize, limits: &Limits) -> Result<VerificationReport> {
    let max_deg = res.degrees.iter().copied().max().unwrap_or(0);
    if degree < max_deg {
        return Err(Error::Domain(format!(
            "verification degree {degree} is below max(∂) = {max_deg}"
        )));
    }
    let target = &res.target;
    let d1 = res.dims[0];
    let algebra_dim = target.algebra_dim();
    let generated = target.generated_dimension(algebra_dim + 1);

    let mut nonvanishing = Vec::new();
    for (k, r) in res.relations().iter().enumerate() {
        if !target.evaluate(r)?.is_zero() {
            nonvanishing.push(k);
        }
    }

    let image_dims = target.image_dims_by_degree(degree, limits.max_dim)?;
    let ideal = ideal_truncation(d1, res.relations(), degree, limits.max_dim)?;
    let mut exactness = BTreeMap::new();
    for k in 1..=degree {
        let space = filtration_dim(d1, k).expect("bounded by enumerate_words");
        let kernel_dim = space - image_dims[k];
        let ideal_dim = ideal.dims_by_degree[k];
        let equal = nonvanishing.is_empty() && kernel_dim == ideal_dim;
        exactness.insert(k, DegreeCheck { kernel_dim, ideal_dim, equal });
    }

    let chain_composable = if res.length() > 2 {
        let mut ok = true;
        for j in 3..=res.length() {
            let lower = &res.relations[j - 3];
            let alphabet = res.dims[j - 3];
            for r in &res.relations[j - 2] {
                if !r.substitute(lower, alphabet)?.is_zero() {
                    ok = false;
                }
            }
        }
        Some(ok)
    } else {
        None
    };

    Ok(VerificationReport {
        name: res.name.clone(),
        degree,
        surjective: generated.dim == algebra_dim,
        generated_dim: generated.dim,
        algebra_dim,
        stabilization_degree: generated.stabilization_degree,
        relations_vanish: nonvanishing.is_empty(),
        nonvanishing_relations: nonvanishing,
        exactness_by_degree: exactness,
        chain_composable,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResolutionDoc {
    name: String,
    length: usize,
    dims: Vec<usize>,
    degrees: Vec<usize>,
    relations: Vec<Vec<CycElement>>,
    target: CycTarget,
}

/// Canonical JSON document (pretty-printed, trailing newline).
pub fn serialize(res: &FiniteFreeResolution) -> String {
    let doc = ResolutionDoc {
        name: res.name.clone(),
        length: res.length(),
        dims: res.dims.clone(),
        degrees: res.degrees.clone(),
        relations: res.relations.clone(),
        target: res.target.clone(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("resolution serializes");
    s.push('\n');
    s
}

/// Parses and validates a resolution document.
pub fn deserialize(document: &str) -> Result<FiniteFreeResolution> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let doc: ResolutionDoc = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    let mut breaches = Vec::new();
    if doc.length != doc.dims.len() {
        breaches.push(format!(
            "length: declared N = {} but dims has {} entries",
            doc.length,
            doc.dims.len()
        ));
    }
    match FiniteFreeResolution::new(doc.name, doc.dims, doc.degrees, doc.relations, doc.target) {
        Ok(res) if breaches.is_empty() => Ok(res),
        Ok(_) => Err(Error::Validation(breaches)),
        Err(Error::Validation(more)) => {
            breaches.extend(more);
            Err(Error::Validation(breaches))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_algebra::DEFAULT_MAX_DIM;

    fn c(n: i64) -> CycScalar {
        CycScalar::from(n)
    }

    fn w(ls: &[usize]) -> Word {
        Word::new(ls.to_vec())
    }

    #[test]
    fn clifford_m1_shape() {
        let res = clifford_resolution(1, &Limits::default()).unwrap();
        assert_eq!(res.length(), 2);
        assert_eq!(res.dims(), &[2, 3]);
        assert_eq!(res.degrees(), &[2]);
        assert_eq!(res.target().n(), 2);
        let r01 = &res.relations()[1];
        let expected = FreeElement::from_terms(2, [(w(&[0, 1]), c(1)), (w(&[1, 0]), c(1))]).unwrap();
        assert_eq!(r01, &expected);
        let r00 = &res.relations()[0];
        let expected = FreeElement::from_terms(2, [(w(&[0, 0]), c(2)), (Word::unit(), c(-1))]).unwrap();
        assert_eq!(r00, &expected);
    }

    #[test]
    fn clifford_m2_shape() {
        let res = clifford_resolution(2, &Limits::default()).unwrap();
        assert_eq!(res.dims(), &[4, 10]);
        assert_eq!(res.degrees(), &[2]);
        assert_eq!(res.target().n(), 4);
    }

    #[test]
    fn clifford_size_cap() {
        let limits = Limits { max_matrix_size: 4, ..Limits::default() };
        assert!(matches!(clifford_resolution(3, &limits), Err(Error::ResourceCap { .. })));
        assert!(clifford_resolution(0, &limits).is_err());
        assert!(clifford_resolution(usize::MAX, &limits).is_err());
    }

    #[test]
    fn gamma_anticommutation() {
        for m in 1..=3 {
            let g = gamma_matrices(m);
            let n = 1 << m;
            for k in 0..2 * m {
                for l in 0..2 * m {
                    let ac = g[k].mul(&g[l]).unwrap().add(&g[l].mul(&g[k]).unwrap()).unwrap();
                    let expected = if k == l {
                        Matrix::identity(n).scale(&c(2))
                    } else {
                        Matrix::zeros(n, n)
                    };
                    assert_eq!(ac, expected, "m={m} k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn ideal_truncation_clifford_m1() {
        let res = clifford_resolution(1, &Limits::default()).unwrap();
        let t2 = ideal_truncation(2, res.relations(), 2, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(t2.dim, 3);
        let t3 = ideal_truncation(2, res.relations(), 3, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(t3.dim, 11);
        assert_eq!(t3.dims_by_degree, vec![0, 0, 3, 11]);
        let empty = ideal_truncation::<CycScalar>(2, &[], 4, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(empty.dim, 0);
        assert!(ideal_truncation(2, res.relations(), 1, DEFAULT_MAX_DIM).is_err());
    }

    #[test]
    fn verify_clifford_m1() {
        let res = clifford_resolution(1, &Limits::default()).unwrap();
        let report = verify(&res, 4, &Limits::default()).unwrap();
        assert!(report.surjective);
        assert!(report.relations_vanish);
        assert_eq!(report.chain_composable, None);
        let kernels: Vec<usize> = (2..=4).map(|k| report.exactness_by_degree[&k].kernel_dim).collect();
        assert_eq!(kernels, vec![3, 11, 27]);
        assert!(report.passed());
        assert!(verify(&res, 1, &Limits::default()).is_err());
    }

    #[test]
    fn corrupted_relation_does_not_vanish() {
        let res = clifford_resolution(1, &Limits::default()).unwrap();
        let mut rels = res.relations().to_vec();
        rels[1].add_term(Word::unit(), c(-1));
        let bad = FiniteFreeResolution::new("bad", vec![2, 3], vec![2], vec![rels], res.target().clone())
            .unwrap();
        let report = verify(&bad, 3, &Limits::default()).unwrap();
        assert!(!report.relations_vanish);
        assert_eq!(report.nonvanishing_relations, vec![1]);
        assert!(!report.passed());
    }

    #[test]
    fn validation_lists_every_breach() {
        let res = clifford_resolution(1, &Limits::default()).unwrap();
        let err = FiniteFreeResolution::new(
            "x",
            vec![2, 4],
            vec![1, 1],
            vec![res.relations().to_vec()],
            res.target().clone(),
        )
        .unwrap_err();
        let Error::Validation(list) = err else { panic!() };
        assert!(list.iter().any(|b| b.starts_with("degrees")));
        assert!(list.iter().any(|b| b.starts_with("relations[0]:")));
        assert!(list.iter().any(|b| b.contains("exceeds")));
        assert!(FiniteFreeResolution::new("x", vec![], vec![], vec![], res.target().clone()).is_err());
    }

    #[test]
    fn longer_chain_composability() {
        // a₃ = ⟨s⟩ with s ↦ r₀₁ · 0 is trivially composable; s ↦ letter 0 is not.
        let res = clifford_resolution(1, &Limits::default()).unwrap();
        let zero = FreeElement::zero(3);
        let letter = FreeElement::generator(3, 0).unwrap();
        for (image, expected) in [(zero, true), (letter, false)] {
            let r = FiniteFreeResolution::new(
                "chain",
                vec![2, 3, 1],
                vec![2, 1],
                vec![res.relations().to_vec(), vec![image]],
                res.target().clone(),
            )
            .unwrap();
            let report = verify(&r, 3, &Limits::default()).unwrap();
            assert_eq!(report.chain_composable, Some(expected));
        }
    }

    #[test]
    fn serialization_roundtrip_and_errors() {
        let res = clifford_resolution(1, &Limits::default()).unwrap();
        let doc = serialize(&res);
        let back = deserialize(&doc).unwrap();
        assert_eq!(back, res);
        assert_eq!(serialize(&back), doc);

        let mut v: serde_json::Value = serde_json::from_str(&doc).unwrap();
        v["degrees"] = serde_json::json!([2, 2]);
        let err = deserialize(&v.to_string()).unwrap_err();
        assert!(err.to_string().contains("degrees"), "{err}");

        let mut v: serde_json::Value = serde_json::from_str(&doc).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(matches!(deserialize(&v.to_string()), Err(Error::Schema { .. })));

        let mut v: serde_json::Value = serde_json::from_str(&doc).unwrap();
        v["relations"][0][0]["terms"][0]["c"] = serde_json::json!(["1", "2/4", "0", "0"]);
        match deserialize(&v.to_string()) {
            Err(Error::Schema { path, .. }) => assert!(path.starts_with("relations[0][0]"), "{path}"),
            other => panic!("unexpected {other:?}"),
        }

        let mut v: serde_json::Value = serde_json::from_str(&doc).unwrap();
        v["length"] = serde_json::json!(3);
        let err = deserialize(&v.to_string()).unwrap_err();
        assert!(err.to_string().contains("length"), "{err}");
    }
}
