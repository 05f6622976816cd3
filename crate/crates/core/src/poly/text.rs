//! Text form of polynomials.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := ('x' | 'y' | 'z' | 'a') ('^' digits)? | '0' | '1'
//! ```
//!
//! `a` stands for the parameter `α` supplied by the caller. This is the same
//! shape [`Poly`]'s `Display` produces whenever every coefficient is a power of `α`.

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::field::Field;

pub fn parse_poly<F: Field>(field: &F, alpha: &F::Elem, text: &str) -> Result<Poly<F>> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut acc = Poly::zero(field);
    for term in cleaned.split('+') {
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        let mut coeff = field.one();
        let mut mon = Monomial::ONE;
        for factor in term.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in factor {factor:?}")))?;
                    (b, e)
                }
                None => (factor, 1),
            };
            match base {
                "x" => mon.x += exp,
                "y" => mon.y += exp,
                "z" => mon.z += exp,
                "a" | "α" => coeff = field.mul(&coeff, &field.pow(alpha, exp as u64)),
                "1" if exp == 1 => {}
                "0" if exp == 1 => coeff = field.zero(),
                _ => return Err(Error::Parse(format!("unknown factor {factor:?}"))),
            }
        }
        acc.add_term(mon, &coeff);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{RatFunc, F2};

    #[test]
    fn parses_simple_forms() {
        let f = F2;
        let p = parse_poly(&f, &true, "y^3*z^3").unwrap();
        assert_eq!(p, Poly::mono(&f, 0, 3, 3));
        let q = parse_poly(&f, &true, "x^3*y + z^2 + 1").unwrap();
        assert_eq!(q.to_string(), "x^3*y + z^2 + 1");
        assert!(parse_poly(&f, &true, "x^").is_err());
        assert!(parse_poly(&f, &true, "w").is_err());
        assert!(parse_poly(&f, &true, "x++y").is_err());
    }

    #[test]
    fn alpha_coefficients_round_trip() {
        let f = RatFunc::new("α");
        let alpha = f.indeterminate();
        let p = parse_poly(&f, &alpha, "z^4 + x*y*z^2 + x^3*z + y^3*z + a*x^2*y^2").unwrap();
        assert_eq!(p, crate::poly::g_alpha(&f, &alpha));
        let shown = p.to_string();
        assert_eq!(parse_poly(&f, &alpha, &shown).unwrap(), p);
    }
}
