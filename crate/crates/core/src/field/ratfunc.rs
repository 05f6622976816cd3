use rand::Rng;

use super::{F2Poly, Field, FieldSpec, Gf2m, Gf2mElem};

/// Element of `F2(t)`: a reduced fraction `num/den` with `gcd(num, den) = 1`
/// and `den ≠ 0`. Over F2 every nonzero polynomial is monic, and zero is `0/1`,
/// so the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatElem {
    num: F2Poly,
    den: F2Poly,
}

impl RatElem {
    pub fn num(&self) -> &F2Poly {
        &self.num
    }

    pub fn den(&self) -> &F2Poly {
        &self.den
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn new(num: F2Poly, den: F2Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(F2Poly::zero());
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Self { num, den }
        } else {
            Self { num: num.div_exact(&g), den: den.div_exact(&g) }
        }
    }

    pub fn from_poly(p: F2Poly) -> Self {
        Self { num: p, den: F2Poly::one() }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

/// The rational function field `F2(t)` in one named indeterminate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    name: String,
}

impl RatFunc {
    pub fn new(name: &str) -> Self {
        Self { name: name.to_string() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The indeterminate `t`.
    pub fn indeterminate(&self) -> RatElem {
        RatElem::from_poly(F2Poly::monomial(1))
    }

    pub fn from_poly(&self, p: F2Poly) -> RatElem {
        RatElem::from_poly(p)
    }

    /// Substitutes `t ← point`. `None` when the denominator vanishes there.
    pub fn evaluate(&self, a: &RatElem, target: &Gf2m, point: &Gf2mElem) -> Option<Gf2mElem> {
        let ev = |p: &F2Poly| {
            p.eval_with(
                point,
                target.zero(),
                target.one(),
                |x, y| target.add(x, y),
                |x, y| target.mul(x, y),
            )
        };
        let den = ev(&a.den);
        let inv = target.inv(&den)?;
        Some(target.mul(&ev(&a.num), &inv))
    }
}

impl Field for RatFunc {
    type Elem = RatElem;

    fn zero(&self) -> RatElem {
        RatElem::from_poly(F2Poly::zero())
    }

    fn one(&self) -> RatElem {
        RatElem::from_poly(F2Poly::one())
    }

    fn is_zero(&self, a: &RatElem) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RatElem, b: &RatElem) -> RatElem {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return RatElem::new(a.num.add(&b.num), a.den.clone());
        }
        let g = a.den.gcd(&b.den);
        let bd = b.den.div_exact(&g);
        let ad = a.den.div_exact(&g);
        let num = a.num.mul(&bd).add(&b.num.mul(&ad));
        RatElem::new(num, a.den.mul(&bd))
    }

    fn mul(&self, a: &RatElem, b: &RatElem) -> RatElem {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        let g1 = a.num.gcd(&b.den);
        let g2 = b.num.gcd(&a.den);
        let num = a.num.div_exact(&g1).mul(&b.num.div_exact(&g2));
        let den = a.den.div_exact(&g2).mul(&b.den.div_exact(&g1));
        RatElem { num, den }
    }

    fn inv(&self, a: &RatElem) -> Option<RatElem> {
        if a.num.is_zero() {
            return None;
        }
        Some(RatElem { num: a.den.clone(), den: a.num.clone() })
    }

    fn square(&self, a: &RatElem) -> RatElem {
        // Squaring preserves coprimality.
        RatElem { num: a.num.square(), den: a.den.square() }
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::RatFunc { indeterminate: self.name.clone() }
    }

    fn encode_hex(&self, a: &RatElem) -> String {
        if a.den.is_one() {
            a.num.to_hex()
        } else {
            format!("{}/{}", a.num.to_hex(), a.den.to_hex())
        }
    }

    fn decode_hex(&self, s: &str) -> Option<RatElem> {
        match s.split_once('/') {
            None => Some(RatElem::from_poly(F2Poly::from_hex(s)?)),
            Some((n, d)) => {
                let den = F2Poly::from_hex(d)?;
                if den.is_zero() {
                    return None;
                }
                Some(RatElem::new(F2Poly::from_hex(n)?, den))
            }
        }
    }

    fn fmt_elem(&self, a: &RatElem) -> String {
        let var = "a";
        let wrap = |p: &F2Poly| {
            if p.weight() > 1 {
                format!("({})", p.fmt_with(var))
            } else {
                p.fmt_with(var)
            }
        };
        if a.den.is_one() {
            wrap(&a.num)
        } else {
            format!("{}/{}", wrap(&a.num), wrap(&a.den))
        }
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> RatElem {
        let num = F2Poly::from_u64(rng.gen_range(0..64));
        let den = F2Poly::from_u64(rng.gen_range(1..32));
        RatElem::new(num, den)
    }

    fn pivot_weight(&self, a: &RatElem) -> usize {
        a.num.degree().unwrap_or(0) + a.den.degree().unwrap_or(0)
    }
}
