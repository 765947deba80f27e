//! Dense univariate polynomials over a [`FieldDesc`], used internally for
//! line-restriction irreducibility tests and modulus checks. Coefficients
//! are low-to-high with a trimmed (canonical) representation.

use crate::field::{FieldDesc, FieldElement};

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct UniPoly {
    field: FieldDesc,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn from_coeffs(field: &FieldDesc, coeffs: Vec<FieldElement>) -> UniPoly {
        let mut p = UniPoly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn zero(field: &FieldDesc) -> UniPoly {
        UniPoly { field: field.clone(), coeffs: vec![] }
    }

    pub fn x(field: &FieldDesc) -> UniPoly {
        UniPoly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lead(&self) -> &FieldElement {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero());
                let b = other.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero());
                a.sub(&b)
            })
            .collect();
        UniPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn rem(&self, by: &UniPoly) -> UniPoly {
        assert!(!by.is_zero(), "remainder by zero polynomial");
        let mut r = self.clone();
        let db = by.degree().unwrap();
        let lead_inv = by.lead().inv();
        while r.degree().is_some_and(|dr| dr >= db) {
            let dr = r.degree().unwrap();
            let c = r.lead().mul(&lead_inv);
            let shift = dr - db;
            for (i, bc) in by.coeffs.iter().enumerate() {
                let v = r.coeffs[shift + i].sub(&c.mul(bc));
                r.coeffs[shift + i] = v;
            }
            r.trim();
        }
        r
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv();
        let coeffs = self.coeffs.iter().map(|c| c.mul(&inv)).collect();
        UniPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let mut acc = self.field.zero();
                for _ in 0..i {
                    acc = acc.add(c);
                }
                acc
            })
            .collect();
        UniPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `x^e mod self` by repeated squaring.
    pub fn x_pow_mod(&self, e: u128) -> UniPoly {
        let mut base = UniPoly::x(&self.field).rem(self);
        let mut acc =
            UniPoly::from_coeffs(&self.field, vec![self.field.one()]).rem(self);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            e >>= 1;
        }
        acc
    }

    /// Over a perfect field: vanishing derivative means a p-th power.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                if d.is_zero() {
                    return false;
                }
                self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Rabin's irreducibility test over a finite field: irreducible iff
    /// `x^(q^n) = x (mod f)` and `gcd(x^(q^(n/r)) - x, f) = 1` for every
    /// prime `r` dividing `n`.
    pub fn is_irreducible(&self) -> bool {
        let q = self.field.order().expect("irreducibility test needs a finite field");
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = UniPoly::x(&self.field).rem(self);
        let mut primes = vec![];
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for r in primes {
            let h = self.x_pow_mod(q.pow((n / r) as u32));
            if self.gcd(&h.sub(&x)).degree() != Some(0) {
                return false;
            }
        }
        self.x_pow_mod(q.pow(n as u32)) == x
    }

    /// Distinct roots in the (finite) coefficient field.
    #[allow(dead_code)]
    pub fn distinct_roots(&self) -> Vec<FieldElement> {
        self.field
            .elements()
            .filter(|x| self.eval(x).is_zero())
            .collect()
    }
}
