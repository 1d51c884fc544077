//! The free unital associative algebra on `d` generators, with its
//! word-length filtration, induced endomorphisms and derivations.
//!
//! Linear maps on generators use the column convention throughout:
//! a `d × d` matrix `L` acts by `e_k ↦ Σ_p L[p][k] e_p`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Default cap on the number of coordinates of a filtration space.
pub const DEFAULT_MAX_DIM: usize = 1_000_000;

/// A word in the generators; the empty word is the unit.
///
/// Ordered length-first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(k: usize) -> Self {
        Word(vec![k])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for k in &self.0 {
            write!(f, "e{k}")?;
        }
        Ok(())
    }
}

/// A finite linear combination of words (no zero coefficients stored).
#[derive(Clone, PartialEq, Debug)]
pub struct FreeElement<F> {
    d: usize,
    terms: BTreeMap<Word, F>,
}

impl<F: Field> FreeElement<F> {
    pub fn zero(d: usize) -> Self {
        FreeElement { d, terms: BTreeMap::new() }
    }

    pub fn one(d: usize) -> Self {
        Self::scalar(d, F::one())
    }

    pub fn scalar(d: usize, c: F) -> Self {
        Self::monomial_unchecked(d, Word::unit(), c)
    }

    /// The generator `e_k`.
    pub fn generator(d: usize, k: usize) -> Result<Self> {
        Self::monomial(d, Word::letter(k), F::one())
    }

    pub fn monomial(d: usize, word: Word, c: F) -> Result<Self> {
        check_letters(d, &word)?;
        Ok(Self::monomial_unchecked(d, word, c))
    }

    fn monomial_unchecked(d: usize, word: Word, c: F) -> Self {
        let mut x = Self::zero(d);
        x.add_term(word, c);
        x
    }

    /// Sums the given terms; repeated words are combined.
    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Word, F)>) -> Result<Self> {
        let mut x = Self::zero(d);
        for (w, c) in terms {
            check_letters(d, &w)?;
            x.add_term(w, c);
        }
        Ok(x)
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal word length; `None` for the zero element.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    /// Adds `c·w` in place.
    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_alphabet(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch { expected: self.d, actual: other.d });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.d);
        }
        FreeElement {
            d: self.d,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul_ref(s))).collect(),
        }
    }

    /// Product in the free algebra: bilinear extension of concatenation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = Self::zero(self.d);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul_ref(b));
            }
        }
        Ok(out)
    }

    /// `u · self · v` for words `u`, `v`.
    pub fn sandwich(&self, u: &Word, v: &Word) -> Self {
        FreeElement {
            d: self.d,
            terms: self.terms.iter().map(|(w, c)| (u.concat(w).concat(v), c.clone())).collect(),
        }
    }

    /// Commutator `xy − yx`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Image under the unital algebra map sending `e_k` to `images[k]`.
    ///
    /// The result lives over the images' alphabet (`target_d`).
    pub fn substitute(&self, images: &[FreeElement<F>], target_d: usize) -> Result<Self> {
        if images.len() != self.d {
            return Err(Error::AlphabetMismatch { expected: self.d, actual: images.len() });
        }
        if let Some(bad) = images.iter().find(|x| x.d != target_d) {
            return Err(Error::AlphabetMismatch { expected: target_d, actual: bad.d });
        }
        let mut out = FreeElement::zero(target_d);
        for (w, c) in &self.terms {
            let mut acc = FreeElement::scalar(target_d, c.clone());
            for &k in w.letters() {
                acc = acc.mul(&images[k])?;
                if acc.is_zero() {
                    break;
                }
            }
            for (w2, c2) in acc.terms {
                out.add_term(w2, c2);
            }
        }
        Ok(out)
    }

    /// Coordinates in the given filtration basis.
    pub fn to_coordinates(&self, basis: &FiltrationBasis) -> Result<Vec<F>> {
        if basis.alphabet_size() != self.d {
            return Err(Error::AlphabetMismatch { expected: basis.alphabet_size(), actual: self.d });
        }
        if let Some(deg) = self.degree() {
            if deg > basis.degree() {
                return Err(Error::DegreeOverflow { degree: deg, max: basis.degree() });
            }
        }
        let mut v = vec![F::zero(); basis.len()];
        for (w, c) in &self.terms {
            let idx = basis.index_of(w).expect("word fits the basis");
            v[idx] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coordinates(v: &[F], basis: &FiltrationBasis) -> Result<Self> {
        if v.len() != basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "coordinate vector of length {} for a basis of size {}",
                v.len(),
                basis.len()
            )));
        }
        let terms = basis
            .words()
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        Ok(FreeElement { d: basis.alphabet_size(), terms })
    }

    /// Applies the unital endomorphism induced by `e_k ↦ Σ_p L[p][k] e_p`.
    pub fn induced_endomorphism(&self, l: &Matrix<F>) -> Result<Self> {
        let images = linear_images(l, self.d)?;
        self.substitute(&images, self.d)
    }

    /// Applies the derivation `D_X` with `D_X(e_k) = Σ_p X[p][k] e_p` and `D_X(1) = 0`.
    pub fn derivation(&self, x: &Matrix<F>) -> Result<Self> {
        let images = linear_images(x, self.d)?;
        let mut out = FreeElement::zero(self.d);
        for (w, c) in &self.terms {
            let letters = w.letters();
            for (pos, &k) in letters.iter().enumerate() {
                let prefix = Word::new(letters[..pos].to_vec());
                let suffix = Word::new(letters[pos + 1..].to_vec());
                for (g, gc) in &images[k].terms {
                    out.add_term(prefix.concat(g).concat(&suffix), c.mul_ref(gc));
                }
            }
        }
        Ok(out)
    }
}

impl FreeElement<CycScalar> {
    /// The involution: conjugate coefficients and reverse words (generators are self-adjoint).
    pub fn adjoint(&self) -> Self {
        let mut out = FreeElement::zero(self.d);
        for (w, c) in &self.terms {
            out.add_term(w.reversed(), c.conjugate());
        }
        out
    }
}

fn check_letters(d: usize, w: &Word) -> Result<()> {
    match w.letters().iter().find(|&&k| k >= d) {
        Some(&k) => Err(Error::AlphabetMismatch { expected: d, actual: k + 1 }),
        None => Ok(()),
    }
}

/// Degree-1 images `Σ_p L[p][k] e_p` of each generator.
fn linear_images<F: Field>(l: &Matrix<F>, d: usize) -> Result<Vec<FreeElement<F>>> {
    if !l.is_square() || l.rows() != d {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix acting on {d} generators",
            l.rows(),
            l.cols()
        )));
    }
    Ok((0..d)
        .map(|k| {
            let mut x = FreeElement::zero(d);
            for p in 0..d {
                x.add_term(Word::letter(p), l.get(p, k).clone());
            }
            x
        })
        .collect())
}

/// `Σ_{k=0}^{degree} d^k`, or `None` on overflow.
pub fn filtration_dim(d: usize, degree: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for k in 0..=degree {
        if k > 0 {
            layer = layer.checked_mul(d)?;
        }
        total = total.checked_add(layer)?;
    }
    Some(total)
}

/// All words of length at most `degree` over `d` letters, in length-lex order.
#[derive(Clone, Debug)]
pub struct FiltrationBasis {
    d: usize,
    degree: usize,
    words: Vec<Word>,
    // offsets[k] = number of words shorter than k
    offsets: Vec<usize>,
}

impl FiltrationBasis {
    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Number of words of length at most `k` (a prefix of the basis).
    pub fn prefix_len(&self, k: usize) -> usize {
        if k >= self.degree {
            self.words.len()
        } else {
            self.offsets[k + 1]
        }
    }

    /// The words of length exactly `k`.
    pub fn words_of_length(&self, k: usize) -> &[Word] {
        if k > self.degree {
            return &[];
        }
        &self.words[self.offsets[k]..self.offsets[k + 1]]
    }

    /// Position of `w` in the basis.
    pub fn index_of(&self, w: &Word) -> Option<usize> {
        if w.len() > self.degree || w.letters().iter().any(|&k| k >= self.d) {
            return None;
        }
        let within = w.letters().iter().fold(0usize, |acc, &k| acc * self.d + k);
        Some(self.offsets[w.len()] + within)
    }

    /// For a non-unit word at `index`, the index of the word minus its last letter, and that letter.
    pub fn parent(&self, index: usize) -> Option<(usize, usize)> {
        let w = &self.words[index];
        let (&last, init) = w.letters().split_last()?;
        let parent = self.index_of(&Word::new(init.to_vec())).expect("prefix is in the basis");
        Some((parent, last))
    }
}

/// Enumerates the basis of `ℱ_degree` over `d` letters.
pub fn enumerate_words(d: usize, degree: usize, cap: usize) -> Result<FiltrationBasis> {
    let size = filtration_dim(d, degree);
    match size {
        Some(s) if s <= cap => {}
        _ => {
            return Err(Error::ResourceCap {
                what: format!("word space ℱ_{degree} on {d} generators"),
                size: size.map_or_else(|| "overflow".to_string(), |s| s.to_string()),
                cap,
            })
        }
    }
    let mut words = vec![Word::unit()];
    let mut offsets = vec![0];
    let mut layer_start = 0;
    for _ in 1..=degree {
        offsets.push(words.len());
        let layer_end = words.len();
        for i in layer_start..layer_end {
            for k in 0..d {
                let mut w = words[i].0.clone();
                w.push(k);
                words.push(Word(w));
            }
        }
        layer_start = layer_end;
    }
    offsets.push(words.len());
    Ok(FiltrationBasis { d, degree, words, offsets })
}

impl<F: Field + fmt::Display> fmt::Display for FreeElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mut s = c.to_string();
            let mut neg = false;
            if !s.contains(' ') {
                if let Some(rest) = s.strip_prefix('-') {
                    neg = true;
                    s = rest.to_string();
                }
            }
            let term = if w.is_unit() {
                s
            } else if s == "1" {
                w.to_string()
            } else if s.contains(' ') {
                format!("({s}){w}")
            } else {
                format!("{s}·{w}")
            };
            match (i, neg) {
                (0, true) => out.push_str(&format!("-{term}")),
                (0, false) => out.push_str(&term),
                (_, true) => out.push_str(&format!(" - {term}")),
                (_, false) => out.push_str(&format!(" + {term}")),
            }
        }
        f.write_str(&out)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc<F> {
    w: Vec<usize>,
    c: F,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementDoc<F> {
    d: usize,
    terms: Vec<TermDoc<F>>,
}

impl<F: Field + Serialize> Serialize for FreeElement<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = ElementDoc {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermDoc { w: w.0.clone(), c: c.clone() })
                .collect(),
        };
        doc.serialize(serializer)
    }
}

impl<'de, F: Field + Deserialize<'de>> Deserialize<'de> for FreeElement<F> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = ElementDoc::<F>::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        let mut prev: Option<Word> = None;
        for t in doc.terms {
            let w = Word(t.w);
            check_letters(doc.d, &w).map_err(D::Error::custom)?;
            if t.c.is_zero() {
                return Err(D::Error::custom(format!("zero coefficient stored for word {w}")));
            }
            if prev.as_ref().is_some_and(|p| p >= &w) {
                return Err(D::Error::custom(format!(
                    "terms not in strictly increasing length-lex order at word {w}"
                )));
            }
            prev = Some(w.clone());
            terms.insert(w, t.c);
        }
        Ok(FreeElement { d: doc.d, terms })
    }
}
