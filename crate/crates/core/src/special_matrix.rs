//! Special `Q`-matrices and the algebraic-α counterexample pipeline.
//!
//! A `Q × Q` matrix is special when `m_{i,j} = 0` unless `i ≡ j (mod 3)` and
//! `i ≠ j`, and otherwise `m_{i,j}` is nonzero and depends only on `ord₂(i − j)`.
//! Such a matrix has rank `Q − 2`; appending `b` and then `b*` raises the rank to
//! `Q − 1` and `Q`. For `α = λ² + λ` with `λ` of degree `m` and `Q = 2^{m−1}`, the
//! induced matrix is special, so `N_{6Q−5} ∩ X` is a line, and its generator
//! certifies `xy f^Q ∉ (x^{4Q}, y^{4Q}, z^{4Q}, g_α)`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::field::{alpha_of_lambda, decode_vector, encode_vector, Field, Gf2m};
use crate::kernel_lab::{b_bit, Lab, Route};
use crate::poly::{parse_poly, Monomial, Poly};
use crate::{is_power_of_two, ord2};

/// The values `c_l` of a special matrix, keyed by `l = ord₂(i − j)`. Only the
/// levels that occur for `Q` are present: `3·2^l < Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialProfile<E> {
    pub q: u64,
    pub levels: BTreeMap<u32, E>,
}

/// Levels `l` with some `1 ≤ i, j ≤ Q`, `i − j = ±3·2^l·odd`.
pub fn realized_levels(q: u64) -> Vec<u32> {
    (0..64).take_while(|&l| 3u64 << l < q).collect()
}

fn check_square_pow2<F: Field>(m: &Matrix<F>) -> Result<u64> {
    let q = m.nrows() as u64;
    if m.ncols() as u64 != q || q < 2 || !is_power_of_two(q) {
        return Err(Error::InvalidParameter(format!(
            "expected a square matrix of power-of-two size at least 2, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(q)
}

/// Extracts the profile, or reports the first entry (row-major) breaking the pattern.
pub fn is_special<F: Field>(m: &Matrix<F>) -> Result<SpecialProfile<F::Elem>> {
    let q = check_square_pow2(m)?;
    let f = m.field();
    let mut levels: BTreeMap<u32, F::Elem> = BTreeMap::new();
    for r in 0..q as usize {
        for c in 0..q as usize {
            let e = m.get(r, c);
            let d = r as i64 - c as i64;
            let reject = |reason: &str| Error::NotSpecial { i: r + 1, j: c + 1, reason: reason.into() };
            if d == 0 || d.rem_euclid(3) != 0 {
                if !f.is_zero(e) {
                    return Err(reject(if d == 0 { "nonzero diagonal entry" } else { "nonzero entry off the mod-3 pattern" }));
                }
                continue;
            }
            if f.is_zero(e) {
                return Err(reject("zero entry on the mod-3 pattern"));
            }
            match levels.entry(ord2(d)) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(e.clone());
                }
                std::collections::btree_map::Entry::Occupied(o) => {
                    if o.get() != e {
                        return Err(reject("entry differs from others at the same 2-adic level"));
                    }
                }
            }
        }
    }
    Ok(SpecialProfile { q, levels })
}

impl<E: Clone> SpecialProfile<E> {
    pub fn to_matrix<F: Field<Elem = E>>(&self, field: &F) -> Result<Matrix<F>> {
        let q = self.q as usize;
        for l in realized_levels(self.q) {
            if !self.levels.contains_key(&l) {
                return Err(Error::InvalidParameter(format!("level {l} missing from profile")));
            }
        }
        Ok(Matrix::from_fn(field, q, q, |r, c| {
            let d = r as i64 - c as i64;
            if d == 0 || d.rem_euclid(3) != 0 {
                field.zero()
            } else {
                self.levels[&ord2(d)].clone()
            }
        }))
    }
}

/// Nonzero `c_l` drawn uniformly for every realized level.
pub fn random_special<F: Field, R: Rng + ?Sized>(field: &F, q: u64, rng: &mut R) -> SpecialProfile<F::Elem> {
    let levels = realized_levels(q)
        .into_iter()
        .map(|l| {
            let c = loop {
                let c = field.random_elem(rng);
                if !field.is_zero(&c) {
                    break c;
                }
            };
            (l, c)
        })
        .collect();
    SpecialProfile { q, levels }
}

pub fn b_vector<F: Field>(field: &F, q: u64) -> Vec<F::Elem> {
    (1..=q).map(|i| field.from_bit(b_bit(q, i))).collect()
}

/// `b*_i = 1 + b_i`.
pub fn b_star<F: Field>(field: &F, q: u64) -> Vec<F::Elem> {
    (1..=q).map(|i| field.from_bit(!b_bit(q, i))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankMethod {
    Recursive,
    Direct,
}

pub fn special_rank<F: Field>(m: &Matrix<F>, method: RankMethod) -> Result<usize> {
    is_special(m)?;
    match method {
        RankMethod::Direct => Ok(m.rank()),
        RankMethod::Recursive => recursive_rank(m, &[]),
    }
}

/// Rank of `M` with `extra` rows appended, by the block reduction
/// `M = [[M1, D, M3], [E, N, E], [M3, D, M1]]` with `M1 + M3 = c·I`, `c ≠ 0`.
/// Extra rows must have the shape `(F | mid | F)`; they reduce to `(0 | mid | 0)`.
fn recursive_rank<F: Field>(m: &Matrix<F>, extra: &[Vec<F::Elem>]) -> Result<usize> {
    let f = m.field();
    let q = m.nrows();
    if q == 2 {
        if !m.is_zero() {
            return Err(Error::violation("a special 2-matrix is zero", format!("{m:?}")));
        }
        return Ok(Matrix::from_rows(f, 2, extra.to_vec())?.rank());
    }
    let q4 = q / 4;
    let blk = |r0: usize, c0: usize, rows: usize, cols: usize| {
        m.submatrix(&(r0..r0 + rows).collect::<Vec<_>>(), &(c0..c0 + cols).collect::<Vec<_>>())
    };
    let h = q / 2;
    let (m1, m2, m3) = (blk(0, 0, q4, q4), blk(0, q4, q4, h), blk(0, q4 + h, q4, q4));
    let (m4, n, m5) = (blk(q4, 0, h, q4), blk(q4, q4, h, h), blk(q4, q4 + h, h, q4));
    let (m6, m7, m8) = (blk(q4 + h, 0, q4, q4), blk(q4 + h, q4, q4, h), blk(q4 + h, q4 + h, q4, q4));
    if m1 != m8 || m2 != m7 || m3 != m6 || m4 != m5 {
        return Err(Error::violation("a special matrix has the mirrored block structure", format!("Q = {q}")));
    }
    let c = f.add(m1.get(0, 0), m3.get(0, 0));
    let scalar = !f.is_zero(&c)
        && (0..q4).all(|i| (0..q4).all(|j| f.add(m1.get(i, j), m3.get(i, j)) == if i == j { c.clone() } else { f.zero() }));
    if !scalar {
        return Err(Error::violation("M1 + M3 is a nonzero scalar matrix", format!("Q = {q}")));
    }
    let mut mids = Vec::with_capacity(extra.len());
    for row in extra {
        if row[..q4] != row[q4 + h..] {
            return Err(Error::violation("extra rows have equal outer blocks", format!("Q = {q}")));
        }
        mids.push(row[q4..q4 + h].to_vec());
    }
    Ok(2 * q4 + recursive_rank(&n, &mids)?)
}

/// Ranks of `M`, `(M over b)` and `(M over b over b*)`, by one method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AugmentedRanks {
    pub m: usize,
    pub m_b: usize,
    pub m_b_bstar: usize,
}

pub fn ranks_by<F: Field>(m: &Matrix<F>, method: RankMethod) -> Result<AugmentedRanks> {
    let q = check_square_pow2(m)? as u64;
    let f = m.field();
    let (b, bs) = (b_vector(f, q), b_star(f, q));
    match method {
        RankMethod::Direct => {
            let mut mb = m.clone();
            mb.push_row(b)?;
            let r1 = mb.rank();
            mb.push_row(bs)?;
            Ok(AugmentedRanks { m: m.rank(), m_b: r1, m_b_bstar: mb.rank() })
        }
        RankMethod::Recursive => Ok(AugmentedRanks {
            m: recursive_rank(m, &[])?,
            m_b: recursive_rank(m, std::slice::from_ref(&b))?,
            m_b_bstar: recursive_rank(m, &[b, bs])?,
        }),
    }
}

/// `(rank(M|b), rank(M|b|b*))`, asserted to be `(Q − 1, Q)` by both methods.
pub fn augmented_ranks<F: Field>(m: &Matrix<F>) -> Result<(usize, usize)> {
    is_special(m)?;
    let q = m.nrows();
    let direct = ranks_by(m, RankMethod::Direct)?;
    let recursive = ranks_by(m, RankMethod::Recursive)?;
    let want = AugmentedRanks { m: q - 2, m_b: q - 1, m_b_bstar: q };
    if direct != want || recursive != want {
        return Err(Error::violation(
            "a special Q-matrix has rank Q − 2, and Q − 1, Q after appending b and b*",
            format!("direct {direct:?}, recursive {recursive:?}"),
        ));
    }
    Ok((want.m_b, want.m_b_bstar))
}

/// `b(Q) = (F₀ | b(Q/2) | F₂)` with `F₀ = F₂` of length `Q/4`.
pub fn b_structure_check(q: u64) -> Check {
    let b: Vec<bool> = (1..=q).map(|i| b_bit(q, i)).collect();
    let q4 = (q / 4) as usize;
    let half: Vec<bool> = (1..=q / 2).map(|i| b_bit(q / 2, i)).collect();
    let passed = q >= 4 && b[..q4] == b[b.len() - q4..] && b[q4..q4 + half.len()] == half[..];
    Check::new(
        format!("b-structure/Q={q}"),
        "b(Q) splits as (F₀ | b(Q/2) | F₀)",
        passed,
        b.iter().map(|&x| if x { '1' } else { '0' }).collect::<String>(),
    )
}

/// `Q = 2^{m−1}` for `λ` with the given minimal polynomial.
pub fn q_of_alpha(minpoly: &[u8]) -> Result<u64> {
    let gf = Gf2m::new(minpoly)?;
    Ok(alpha_of_lambda(&gf).1)
}

/// The induced matrix for `α = λ² + λ` is special, with `c_l = λ + λ^{2^{l+1}}`.
pub fn verify_induced_is_special(gf: &Gf2m) -> Result<Vec<Check>> {
    let (alpha, q) = alpha_of_lambda(gf);
    let lab = Lab::new(gf, q, &alpha)?;
    let m = lab.induced_matrix(Route::Formula)?.m;
    let mut checks = Vec::new();
    let profile = is_special(&m);
    checks.push(Check::new(
        format!("induced-special/m={}", gf.degree()),
        "the induced matrix for α = λ² + λ, Q = 2^{m−1} is a special Q-matrix",
        profile.is_ok(),
        match &profile {
            Ok(p) => format!("{} levels", p.levels.len()),
            Err(e) => e.to_string(),
        },
    ));
    let lambda = gf.generator();
    let mut bad = Vec::new();
    for r in 0..q as usize {
        for c in 0..q as usize {
            let d = r as i64 - c as i64;
            if d == 0 || d.rem_euclid(3) != 0 {
                continue;
            }
            let l = 1 + ord2(d);
            let want = gf.add(&lambda, &gf.frobenius_pow(&lambda, l));
            if *m.get(r, c) != want {
                bad.push(format!("({},{})", r + 1, c + 1));
            }
        }
    }
    let levels = profile
        .map(|p| p.levels.iter().map(|(l, c)| format!("c{l}={}", gf.encode_hex(c))).collect::<Vec<_>>().join(" "))
        .unwrap_or_default();
    checks.push(Check::new(
        format!("induced-entries/m={}", gf.degree()),
        "off-diagonal entries equal λ + λ^{2^l} with l = 1 + ord₂(i − j)",
        bad.is_empty(),
        if bad.is_empty() { levels } else { format!("mismatch at {}", bad.join(" ")) },
    ));
    Ok(checks)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRanks {
    pub m: usize,
    pub m_b: usize,
    pub m_b_bstar: usize,
}

/// Everything needed to re-check non-membership by multiplication alone.
///
/// Field elements are hex (see `Field::encode_hex`); `u` lists coordinates over
/// the degree-`(6Q−5)` monomial basis of `O` in ascending lex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleCertificate {
    pub m: u32,
    pub minpoly: Vec<u8>,
    pub field: String,
    pub alpha: String,
    pub q: u64,
    pub matrix: Vec<Vec<String>>,
    pub b: Vec<u8>,
    pub b_star: Vec<u8>,
    pub ranks: CertificateRanks,
    /// Generator of the kernel of `(M over b)`, first nonzero coordinate 1.
    pub kernel_generator: String,
    pub f: String,
    pub u: String,
    /// Coefficient of `x^{4Q−2} y^{Q−2} z^{Q−1}` in `u`.
    pub rho_u: String,
    /// Coefficient of `(xyz)^{4Q−1}` in `u · xy · f^Q`.
    pub pairing_value: String,
    pub non_member_by_elimination: bool,
}

fn rho_monomial(q: u64) -> Monomial {
    Monomial::new(4 * q as u32 - 2, q as u32 - 2, q as u32 - 1)
}

/// Runs the full pipeline for `λ` generating `gf`; `f` defaults to `y³z³`.
pub fn counterexample_certificate(gf: &Gf2m, f: Option<&str>) -> Result<CounterexampleCertificate> {
    let (alpha, q) = alpha_of_lambda(gf);
    let f_text = f.unwrap_or("y^3*z^3");
    let f6 = parse_poly(gf, &alpha, f_text)?;
    let lab = Lab::new(gf, q, &alpha)?;
    let induced = lab.induced_matrix(Route::Formula)?;
    is_special(&induced.m)?;
    let (m_b, m_b_bstar) = augmented_ranks(&induced.m)?;
    let ranks = CertificateRanks { m: q as usize - 2, m_b, m_b_bstar };

    // ρ on the canonical pull-backs of E_i is b*_i.
    let rho_mon = rho_monomial(q);
    let bs = b_star(gf, q);
    for i in 0..q as usize {
        let mut unit = vec![gf.zero(); q as usize];
        unit[i] = gf.one();
        if lab.pullback(&unit)?.coeff(&rho_mon) != bs[i] {
            return Err(Error::violation("ρ(E_i) = b*_i", format!("i = {}", i + 1)));
        }
    }

    let cap = lab.kernel_n_cap_x()?;
    if cap.kernel.len() != 1 {
        return Err(Error::violation(
            "N_{6Q−5} ∩ X is one-dimensional",
            format!("dimension {}", cap.kernel.len()),
        ));
    }
    let mut v = cap.kernel[0].clone();
    let mut u = cap.lifts[0].clone();
    let lead = v.iter().find(|c| !gf.is_zero(c)).cloned().expect("nonzero kernel vector");
    let inv = gf.inv(&lead).expect("nonzero");
    gf.scale_slice(&mut v, &inv);
    gf.scale_slice(&mut u.coords, &inv);

    let ring = lab.ring();
    let u_poly = ring.to_poly(&u);
    let rho_u = u_poly.coeff(&rho_mon);
    if gf.is_zero(&rho_u) {
        return Err(Error::violation("the generator u has ρ(u) ≠ 0", "ρ(u) = 0"));
    }
    let pairing_value = pairing_value(gf, q, &u_poly, &f6);
    if gf.is_zero(&pairing_value) {
        return Err(Error::violation("u · xy · f^Q ≠ 0 in O", "pairing coefficient vanishes"));
    }
    let colon = lab.colon_membership(&f6)?;
    if colon.member {
        return Err(Error::violation("xy f^Q ∉ (x^{4Q}, y^{4Q}, z^{4Q}, g_α)", "elimination found a preimage"));
    }

    let minpoly = gf.minpoly();
    let matrix = (0..q as usize).map(|r| induced.m.row(r).iter().map(|e| gf.encode_hex(e)).collect()).collect();
    let bits = |v: &[crate::field::Gf2mElem]| v.iter().map(|e| e.0 as u8).collect();
    Ok(CounterexampleCertificate {
        m: gf.degree(),
        field: gf.spec().to_string(),
        minpoly,
        alpha: gf.encode_hex(&alpha),
        q,
        matrix,
        b: bits(&induced.b),
        b_star: bits(&bs),
        ranks,
        kernel_generator: encode_vector(gf, &v),
        f: f_text.to_string(),
        u: encode_vector(gf, &u.coords),
        rho_u: gf.encode_hex(&rho_u),
        pairing_value: gf.encode_hex(&pairing_value),
        non_member_by_elimination: !colon.member,
    })
}

/// Coefficient of `(xyz)^{4Q−1}` in `u · xy · f^Q`.
fn pairing_value(gf: &Gf2m, q: u64, u: &Poly<Gf2m>, f6: &Poly<Gf2m>) -> <Gf2m as Field>::Elem {
    let n = 4 * q as u32;
    let top = Monomial::new(n - 1, n - 1, n - 1);
    let other = Poly::mono(gf, 1, 1, 0).mul(&f6.frobenius(q.trailing_zeros()).truncate(n));
    let mut acc = gf.zero();
    for (mu, cu) in u.terms() {
        for (mo, co) in other.terms() {
            if mu.mul(mo) == top {
                gf.add_assign(&mut acc, &gf.mul(cu, co));
            }
        }
    }
    acc
}

/// Re-checks a certificate using only multiplication and coefficient lookup.
pub fn verify_certificate(cert: &CounterexampleCertificate) -> Result<Vec<Check>> {
    let gf = Gf2m::new(&cert.minpoly)?;
    let (alpha, q) = alpha_of_lambda(&gf);
    let name = |s: &str| format!("certificate-{s}/m={}", cert.m);
    let mut checks = vec![Check::new(
        name("parameters"),
        "recorded α and Q match λ² + λ and 2^{m−1}",
        gf.encode_hex(&alpha) == cert.alpha && q == cert.q && gf.degree() == cert.m,
        format!("α = {}, Q = {q}", gf.encode_hex(&alpha)),
    )];
    let ring = crate::rings::QuotientRing::trunc_o(&gf, q)?;
    let d = 6 * q as u32 - 5;
    let coords = decode_vector(&gf, &cert.u).ok_or_else(|| Error::Parse("certificate u".into()))?;
    if coords.len() != ring.dim(d) {
        return Err(Error::DimensionMismatch { expected: ring.dim(d), got: coords.len() });
    }
    let u = ring.to_poly(&crate::rings::GradedVector { degree: d, coords });
    let g = crate::poly::g_alpha(&gf, &alpha);
    let gu = ring.reduce(&g.mul(&u));
    checks.push(Check::new(name("kernel"), "g_α · u = 0 in O", gu.is_zero(), format!("{} terms in u", u.len())));
    let rho = u.coeff(&rho_monomial(q));
    checks.push(Check::new(
        name("rho"),
        "ρ(u) ≠ 0 and matches the recorded value",
        !gf.is_zero(&rho) && gf.encode_hex(&rho) == cert.rho_u,
        format!("ρ(u) = {}", gf.encode_hex(&rho)),
    ));
    let f6 = parse_poly(&gf, &alpha, &cert.f)?;
    let pv = pairing_value(&gf, q, &u, &f6);
    checks.push(Check::new(
        name("pairing"),
        "the coefficient of (xyz)^{4Q−1} in u · xy · f^Q is nonzero, so xy f^Q ∉ g_α O",
        !gf.is_zero(&pv) && gf.encode_hex(&pv) == cert.pairing_value,
        format!("value {}", gf.encode_hex(&pv)),
    ));
    Ok(checks)
}
