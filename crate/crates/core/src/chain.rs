//! Chains (equivalently cochains) with GF(p) coefficients, and the
//! boundary / coboundary operators acting on them.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::simplex::{incidence_sign, Simplex};

/// A finite formal sum of `dim`-simplices. Zero coefficients are never
/// stored, so the key set is exactly the support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    dim: isize,
    field: Field,
    terms: BTreeMap<Simplex, u32>,
}

impl Chain {
    pub fn zero(dim: isize, field: Field) -> Self {
        Chain {
            dim,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The elementary chain `1·sigma`.
    pub fn simplex(sigma: Simplex, field: Field) -> Self {
        let mut c = Chain::zero(sigma.dim(), field);
        c.add_term(sigma, 1);
        c
    }

    /// Builds a chain from signed integer coefficients; every simplex must
    /// have dimension `dim`.
    pub fn from_terms<I>(dim: isize, field: Field, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Simplex, i64)>,
    {
        let mut c = Chain::zero(dim, field);
        for (s, coeff) in terms {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
            c.add_term(s, field.reduce(coeff));
        }
        Ok(c)
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Adds `coeff·sigma`, pruning the term if it cancels.
    pub fn add_term(&mut self, sigma: Simplex, coeff: u32) {
        debug_assert_eq!(sigma.dim(), self.dim);
        let coeff = coeff % self.field.p();
        if coeff == 0 {
            return;
        }
        let f = self.field;
        match self.terms.entry(sigma) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = f.add(*e.get(), coeff);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn coeff(&self, sigma: &Simplex) -> u32 {
        self.terms.get(sigma).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, u32)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> {
        self.terms.keys()
    }

    pub fn support_vec(&self) -> Vec<Simplex> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn max_vertex(&self) -> u32 {
        self.terms
            .keys()
            .map(Simplex::max_vertex)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, a: u32) -> Chain {
        let mut out = Chain::zero(self.dim, self.field);
        for (s, c) in self.terms() {
            out.add_term(s.clone(), self.field.mul(a, c));
        }
        out
    }

    /// `self += a·other`.
    pub fn axpy(&mut self, a: u32, other: &Chain) {
        debug_assert_eq!(self.field, other.field);
        debug_assert!(other.is_zero() || self.dim == other.dim);
        for (s, c) in other.terms() {
            self.add_term(s.clone(), self.field.mul(a, c));
        }
    }

    /// Keeps only the terms whose simplex satisfies `keep`.
    pub fn restrict<F: Fn(&Simplex) -> bool>(&self, keep: F) -> Chain {
        Chain {
            dim: self.dim,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| keep(s))
                .map(|(s, &c)| (s.clone(), c))
                .collect(),
        }
    }

    /// The leading (lexicographically least) coefficient, or 0 for the zero chain.
    pub fn leading_coeff(&self) -> u32 {
        self.terms.values().next().copied().unwrap_or(0)
    }

    /// Rescales so the lexicographically least simplex has coefficient 1.
    pub fn normalized(&self) -> Chain {
        match self.terms.values().next() {
            None => self.clone(),
            Some(&c) => self.scale(self.field.inv(c).expect("stored coefficients are nonzero")),
        }
    }
}

impl Add for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out.axpy(1, rhs);
        out
    }
}

impl Sub for &Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out.axpy(self.field.neg(1), rhs);
        out
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        self.scale(self.field.neg(1))
    }
}

/// `∂` extended linearly: `∂σ = Σ (-1)^(i-1) (σ \ s_i)`, with `∂(v) = ∅`.
pub fn boundary(chain: &Chain) -> Chain {
    let f = chain.field;
    let mut out = Chain::zero(chain.dim - 1, f);
    if chain.dim < 0 {
        return out;
    }
    for (sigma, c) in chain.terms() {
        for (sign, tau) in sigma.boundary_faces() {
            out.add_term(tau, f.mul(c, f.from_sign(sign)));
        }
    }
    out
}

/// `δ`, the transpose of `∂` on the complete complex over `[n]`: the
/// coefficient of each `(dim+1)`-simplex `ξ` is `Σ_τ sign(ξ, τ)·chain[τ]`.
pub fn coboundary(chain: &Chain, n: u32) -> Chain {
    let f = chain.field;
    let mut out = Chain::zero(chain.dim + 1, f);
    for (tau, c) in chain.terms() {
        for v in 1..=n {
            if tau.contains(v) {
                continue;
            }
            let (xi, sign) = tau.with_vertex(v);
            debug_assert_eq!(sign, incidence_sign(&xi, tau));
            out.add_term(xi, f.mul(c, f.from_sign(sign)));
        }
    }
    out
}
