//! Polynomials over GF(2) packed into 64-bit limbs, coefficient of `x^i` at bit `i`.

use std::fmt;

use crate::bitseq::FiniteWord;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    // Canonical: no trailing zero limbs, so the zero polynomial is empty.
    limbs: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut limbs = vec![0u64; k / 64 + 1];
        limbs[k / 64] = 1 << (k % 64);
        Gf2Poly { limbs }
    }

    /// `x^k - 1`, which equals `x^k + 1` over GF(2).
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut p = Self::monomial(k);
        p.flip(0);
        p.normalize();
        p
    }

    /// `S(x) = sum s_i x^i`.
    pub fn from_word(word: &FiniteWord) -> Self {
        let mut p = Gf2Poly {
            limbs: vec![0; word.len().div_ceil(64)],
        };
        for (i, b) in word.iter().enumerate() {
            if b {
                p.limbs[i / 64] |= 1 << (i % 64);
            }
        }
        p.normalize();
        p
    }

    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        Self::from_word(&FiniteWord::from_bits(coeffs))
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs.get(i / 64).is_some_and(|l| (l >> (i % 64)) & 1 == 1)
    }

    fn flip(&mut self, i: usize) {
        if self.limbs.len() <= i / 64 {
            self.limbs.resize(i / 64 + 1, 0);
        }
        self.limbs[i / 64] ^= 1 << (i % 64);
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        if self.coeff(i) != value {
            self.flip(i);
            self.normalize();
        }
    }

    /// `self += other * x^shift`.
    pub fn add_shifted(&mut self, other: &Gf2Poly, shift: usize) {
        let Some(deg) = other.degree() else { return };
        let need = (deg + shift) / 64 + 1;
        if self.limbs.len() < need {
            self.limbs.resize(need, 0);
        }
        let (words, bits) = (shift / 64, shift % 64);
        for (i, &l) in other.limbs.iter().enumerate() {
            self.limbs[i + words] ^= l << bits;
            if bits != 0 && i + words + 1 < self.limbs.len() {
                self.limbs[i + words + 1] ^= l >> (64 - bits);
            }
        }
        self.normalize();
    }

    /// Multiplies by `x` and adds `bit` as the new constant term.
    pub fn shift_in(&mut self, bit: bool) {
        let mut carry = u64::from(bit);
        for l in &mut self.limbs {
            let out = *l >> 63;
            *l = (*l << 1) | carry;
            carry = out;
        }
        if carry != 0 {
            self.limbs.push(carry);
        }
        self.normalize();
    }

    /// Parity of the coefficientwise product, i.e. `sum_i a_i b_i` in GF(2).
    pub fn dot(&self, other: &Gf2Poly) -> bool {
        self.limbs
            .iter()
            .zip(&other.limbs)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Quotient and remainder of Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> (Gf2Poly, Gf2Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Gf2Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            quot.flip(rd - dd);
            rem.add_shifted(divisor, rd - dd);
        }
        quot.normalize();
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Gf2Poly) -> Gf2Poly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            rem.add_shifted(divisor, rd - dd);
        }
        rem
    }

    /// Greatest common divisor (monic automatically over GF(2)); `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        if let Some(d) = self.degree() {
            for i in 0..=d {
                if self.coeff(i) {
                    out.add_shifted(other, i);
                }
            }
        }
        out
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let terms: Vec<String> = (0..=d)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
