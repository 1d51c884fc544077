//! The target algebra `M_n` with chosen generator images, the evaluation
//! homomorphism from the free algebra, and its kernel by filtration degree.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::free_algebra::{enumerate_words, FiltrationBasis, FreeElement};
use crate::linalg::{EchelonSpan, Matrix};
use crate::scalar::Field;

/// `M_n` together with the images of the generators (the map `f₁∘i₁`).
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixAlgebraTarget<F> {
    n: usize,
    generator_images: Vec<Matrix<F>>,
}

/// Dimension of the unital subalgebra generated by the images.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratedDimension {
    pub dim: usize,
    /// First degree `D` whose span equals the span at `D + 1`.
    pub stabilization_degree: Option<usize>,
    /// Span dimension at degrees `0..` as far as computed.
    pub dims_by_degree: Vec<usize>,
}

impl<F: Field> MatrixAlgebraTarget<F> {
    pub fn new(n: usize, generator_images: Vec<Matrix<F>>) -> Result<Self> {
        for (k, g) in generator_images.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator image {k} is {}x{}, expected {n}x{n}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        Ok(MatrixAlgebraTarget { n, generator_images })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.generator_images.len()
    }

    pub fn generator_images(&self) -> &[Matrix<F>] {
        &self.generator_images
    }

    /// Vector-space dimension `n²` of `M_n`.
    pub fn algebra_dim(&self) -> usize {
        self.n * self.n
    }

    /// Evaluates a free-algebra element: unit ↦ identity, words ↦ products.
    pub fn evaluate(&self, x: &FreeElement<F>) -> Result<Matrix<F>> {
        if x.alphabet_size() != self.num_generators() {
            return Err(Error::AlphabetMismatch {
                expected: self.num_generators(),
                actual: x.alphabet_size(),
            });
        }
        let mut out = Matrix::zeros(self.n, self.n);
        for (w, c) in x.terms() {
            let mut m = Matrix::identity(self.n);
            for &k in w.letters() {
                m = m.mul(&self.generator_images[k])?;
            }
            out = out.add(&m.scale(c))?;
        }
        Ok(out)
    }

    /// Images of every basis word, flattened row-major to vectors of length `n²`.
    pub fn evaluate_basis(&self, basis: &FiltrationBasis) -> Result<Vec<Vec<F>>> {
        if basis.alphabet_size() != self.num_generators() {
            return Err(Error::AlphabetMismatch {
                expected: self.num_generators(),
                actual: basis.alphabet_size(),
            });
        }
        let mut images: Vec<Matrix<F>> = Vec::with_capacity(basis.len());
        images.push(Matrix::identity(self.n));
        for idx in 1..basis.len() {
            let (parent, last) = basis.parent(idx).expect("non-unit word");
            let m = images[parent].mul(&self.generator_images[last])?;
            images.push(m);
        }
        Ok(images.into_iter().map(|m| m.entries().to_vec()).collect())
    }

    /// Span dimension of the words of length ≤ D, grown until two consecutive
    /// degrees agree or `cap` is reached.
    pub fn generated_dimension(&self, cap: usize) -> GeneratedDimension {
        let mut span = EchelonSpan::new(self.algebra_dim());
        let mut layer: Vec<Matrix<F>> = vec![Matrix::identity(self.n)];
        span.insert(layer[0].entries().to_vec());
        let mut dims = vec![span.rank()];
        let mut stabilization = None;
        for degree in 1..=cap {
            // span_{D+1} = span_D + span_D · generators, so only new basis
            // directions need to be multiplied out.
            let mut next = Vec::new();
            for m in &layer {
                for g in &self.generator_images {
                    let p = m.mul(g).expect("square matrices of equal size");
                    if span.insert(p.entries().to_vec()) {
                        next.push(p);
                    }
                }
            }
            dims.push(span.rank());
            if next.is_empty() {
                stabilization = Some(degree - 1);
                break;
            }
            layer = next;
        }
        GeneratedDimension { dim: span.rank(), stabilization_degree: stabilization, dims_by_degree: dims }
    }

    /// Whether the images generate all of `M_n`.
    pub fn is_surjective(&self) -> bool {
        self.generated_dimension(self.algebra_dim() + 1).dim == self.algebra_dim()
    }

    /// Rank of the evaluation map restricted to `ℱ_k`, for `k = 0..=degree`.
    pub fn image_dims_by_degree(&self, degree: usize, max_dim: usize) -> Result<Vec<usize>> {
        let basis = enumerate_words(self.num_generators(), degree, max_dim)?;
        let images = self.evaluate_basis(&basis)?;
        let mut span = EchelonSpan::new(self.algebra_dim());
        let mut out = Vec::with_capacity(degree + 1);
        let mut next = 0;
        for k in 0..=degree {
            let end = basis.prefix_len(k);
            for img in &images[next..end] {
                if !span.is_full() {
                    span.insert(img.clone());
                }
            }
            next = end;
            out.push(span.rank());
        }
        Ok(out)
    }

    /// Echelon basis of `ker f₁ ∩ ℱ_degree`.
    pub fn kernel_of_evaluation(&self, degree: usize, max_dim: usize) -> Result<Vec<FreeElement<F>>> {
        let basis = enumerate_words(self.num_generators(), degree, max_dim)?;
        let images = self.evaluate_basis(&basis)?;
        let m = Matrix::from_columns(self.algebra_dim(), &images)?;
        let (_, kernel) = m.rank_and_kernel();
        kernel.iter().map(|v| FreeElement::from_coordinates(v, &basis)).collect()
    }

    /// Applies the change of generators `e_k ↦ Σ_p L[p][k] e_p`: the new image of
    /// generator `p` is `Σ_k (L⁻¹)[k][p] · image_k`, so that evaluating the
    /// induced endomorphism's output agrees with evaluating its input.
    pub fn transformed(&self, l: &Matrix<F>) -> Result<Self> {
        let d = self.num_generators();
        if !l.is_square() || l.rows() != d {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} change of generators for {d} generators",
                l.rows(),
                l.cols()
            )));
        }
        let inv = l
            .inverse()
            .ok_or_else(|| Error::Domain("change of generators is not invertible".into()))?;
        let images = (0..d)
            .map(|p| {
                (0..d).try_fold(Matrix::zeros(self.n, self.n), |acc, k| {
                    acc.add(&self.generator_images[k].scale(inv.get(k, p)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, images)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetDoc {
    n: usize,
    generator_images: Vec<Vec<Vec<CycScalar>>>,
}

impl Serialize for MatrixAlgebraTarget<CycScalar> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TargetDoc {
            n: self.n,
            generator_images: self.generator_images.iter().map(Matrix::to_rows).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatrixAlgebraTarget<CycScalar> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = TargetDoc::deserialize(deserializer)?;
        let mut images = Vec::with_capacity(doc.generator_images.len());
        for (k, rows) in doc.generator_images.into_iter().enumerate() {
            if rows.len() != doc.n || rows.iter().any(|r| r.len() != doc.n) {
                return Err(D::Error::custom(format!(
                    "generator image {k} is not {n}x{n}",
                    n = doc.n
                )));
            }
            images.push(Matrix::from_rows(rows).map_err(D::Error::custom)?);
        }
        // from_rows on zero rows yields 0x0; n = 0 images are fine as such.
        MatrixAlgebraTarget::new(doc.n, images).map_err(D::Error::custom)
    }
}

/// Standard Pauli matrices σ_x, σ_y, σ_z.
pub fn pauli() -> [Matrix<CycScalar>; 3] {
    let z = CycScalar::from(0);
    let one = CycScalar::from(1);
    let i = CycScalar::i();
    let sx = Matrix::from_rows(vec![vec![z.clone(), one.clone()], vec![one.clone(), z.clone()]]);
    let sy = Matrix::from_rows(vec![vec![z.clone(), -i.clone()], vec![i, z.clone()]]);
    let sz = Matrix::from_rows(vec![vec![one, z.clone()], vec![z, CycScalar::from(-1)]]);
    [sx.unwrap(), sy.unwrap(), sz.unwrap()]
}
