//! Tautological classes on moduli of torus bundles and the free bases of
//! their relative Picard groups.
//!
//! Characters of `T` are `ℤ^r` with basis `e_i`, marked-point multiplicities
//! are `ℤ^n` with basis `f_j`, and the degree `d` lives in the dual `ℤ^r`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::abelian::{
    dot, hnf_basis, kernel_basis, lattice_preimage, same_lattice, snf, solve_in_lattice, IntMatrix,
};
use crate::error::{Error, Result};
use crate::symforms::{sym2_dim, sym2_index, sym2_pairs, BilForm};

/// One unevaluated tautological line bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Atom {
    /// `𝓛(χ, ζ)`
    Det {
        #[serde(serialize_with = "crate::abelian::decimal::vec")]
        chi: Vec<BigInt>,
        #[serde(serialize_with = "crate::abelian::decimal::vec")]
        zeta: Vec<BigInt>,
    },
    /// `⟨(χ, ζ), (χ′, ζ′)⟩`
    Pair {
        #[serde(serialize_with = "crate::abelian::decimal::vec")]
        chi: Vec<BigInt>,
        #[serde(serialize_with = "crate::abelian::decimal::vec")]
        zeta: Vec<BigInt>,
        #[serde(serialize_with = "crate::abelian::decimal::vec")]
        chi2: Vec<BigInt>,
        #[serde(serialize_with = "crate::abelian::decimal::vec")]
        zeta2: Vec<BigInt>,
    },
}

/// A formal integer combination of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TautClass {
    #[serde(serialize_with = "serialize_terms")]
    pub terms: Vec<(BigInt, Atom)>,
}

fn serialize_terms<S: serde::Serializer>(
    terms: &[(BigInt, Atom)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(terms.iter().map(|(c, a)| (c.to_string(), a)))
}

impl TautClass {
    pub fn zero() -> Self {
        TautClass::default()
    }

    pub fn det(chi: Vec<BigInt>, zeta: Vec<BigInt>) -> Self {
        TautClass {
            terms: vec![(BigInt::one(), Atom::Det { chi, zeta })],
        }
    }

    pub fn pair(
        chi: Vec<BigInt>,
        zeta: Vec<BigInt>,
        chi2: Vec<BigInt>,
        zeta2: Vec<BigInt>,
    ) -> Self {
        TautClass {
            terms: vec![(
                BigInt::one(),
                Atom::Pair {
                    chi,
                    zeta,
                    chi2,
                    zeta2,
                },
            )],
        }
    }

    pub fn plus(mut self, other: TautClass) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn scaled(mut self, k: &BigInt) -> Self {
        for (c, _) in &mut self.terms {
            *c *= k;
        }
        self
    }

    /// Replaces every character slot `χ` by `f·χ`.
    pub fn map_characters(&self, f: &IntMatrix) -> TautClass {
        let terms = self
            .terms
            .iter()
            .map(|(c, a)| {
                let a = match a {
                    Atom::Det { chi, zeta } => Atom::Det {
                        chi: f.mul_vec(chi),
                        zeta: zeta.clone(),
                    },
                    Atom::Pair {
                        chi,
                        zeta,
                        chi2,
                        zeta2,
                    } => Atom::Pair {
                        chi: f.mul_vec(chi),
                        zeta: zeta.clone(),
                        chi2: f.mul_vec(chi2),
                        zeta2: zeta2.clone(),
                    },
                };
                (c.clone(), a)
            })
            .collect();
        TautClass { terms }
    }

    /// Checks that every vector has the expected length.
    pub fn check_shape(&self, r: usize, n: usize) -> Result<()> {
        let bad = |what: &str, v: &[BigInt], want: usize| -> Result<()> {
            if v.len() == want {
                Ok(())
            } else {
                Err(Error::Validation(format!(
                    "{what} has length {}, expected {want}",
                    v.len()
                )))
            }
        };
        for (_, a) in &self.terms {
            match a {
                Atom::Det { chi, zeta } => {
                    bad("χ", chi, r)?;
                    bad("ζ", zeta, n)?;
                }
                Atom::Pair {
                    chi,
                    zeta,
                    chi2,
                    zeta2,
                } => {
                    bad("χ", chi, r)?;
                    bad("ζ", zeta, n)?;
                    bad("χ′", chi2, r)?;
                    bad("ζ′", zeta2, n)?;
                }
            }
        }
        Ok(())
    }

    /// Parses `2 L(1,0; 0) - P([1,0],[0] | [0,1],[1])`. Vectors are bracketed or
    /// bare comma lists; within one side the character and the multiplicities are
    /// separated by `;` (bare) or simply follow each other (bracketed). A missing
    /// multiplicity vector means zero.
    pub fn parse(s: &str, r: usize, n: usize) -> Result<TautClass> {
        let mut p = ClassParser { s, pos: 0, r, n };
        let c = p.class()?;
        c.check_shape(r, n)?;
        Ok(c)
    }
}

struct ClassParser<'a> {
    s: &'a str,
    pos: usize,
    r: usize,
    n: usize,
}

impl ClassParser<'_> {
    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {} of {:?}", self.pos + 1, self.s))
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn class(&mut self) -> Result<TautClass> {
        let mut out = TautClass::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.rest().is_empty() {
                if first {
                    return Err(self.err("empty class"));
                }
                return Ok(out);
            }
            let mut sign = BigInt::one();
            if self.eat('+') {
            } else if self.eat('-') {
                sign = -sign;
            } else if !first {
                return Err(self.err("expected '+' or '-'"));
            }
            self.skip_ws();
            let digits: String = self
                .rest()
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .collect();
            let coeff = if digits.is_empty() {
                BigInt::one()
            } else {
                self.pos += digits.len();
                self.eat('*');
                digits.parse::<BigInt>().expect("digits")
            };
            let atom = self.atom()?;
            out.terms.push((sign * coeff, atom));
            first = false;
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        self.skip_ws();
        let kind = self.rest().chars().next();
        match kind {
            Some('L') | Some('P') => self.pos += 1,
            _ => return Err(self.err("expected L(...) or P(...)")),
        }
        if !self.eat('(') {
            return Err(self.err("expected '('"));
        }
        let start = self.pos;
        let close = self
            .rest()
            .find(')')
            .ok_or_else(|| self.err("missing ')'"))?;
        let body = &self.s[start..start + close];
        self.pos = start + close + 1;
        let side = |txt: &str| parse_side(txt, self.r, self.n).map_err(|e| self.err(&e));
        if kind == Some('L') {
            let (chi, zeta) = side(body)?;
            Ok(Atom::Det { chi, zeta })
        } else {
            let (a, b) = body
                .split_once('|')
                .ok_or_else(|| self.err("P(...) needs two sides separated by '|'"))?;
            let (chi, zeta) = side(a)?;
            let (chi2, zeta2) = side(b)?;
            Ok(Atom::Pair {
                chi,
                zeta,
                chi2,
                zeta2,
            })
        }
    }
}

fn parse_side(
    txt: &str,
    r: usize,
    n: usize,
) -> std::result::Result<(Vec<BigInt>, Vec<BigInt>), String> {
    let txt = txt.trim();
    let parts: Vec<String> = if txt.contains('[') {
        let mut out = Vec::new();
        let mut rest = txt;
        while let Some(open) = rest.find('[') {
            let close = rest[open..].find(']').ok_or("missing ']'")? + open;
            out.push(rest[open + 1..close].to_string());
            rest = &rest[close + 1..];
        }
        out
    } else {
        txt.split(';').map(str::to_string).collect()
    };
    let parse_vec = |p: &str| -> std::result::Result<Vec<BigInt>, String> {
        let p = p.trim();
        if p.is_empty() {
            return Ok(Vec::new());
        }
        p.split(',')
            .map(|x| {
                x.trim()
                    .parse::<BigInt>()
                    .map_err(|_| format!("not an integer: {:?}", x.trim()))
            })
            .collect()
    };
    match parts.as_slice() {
        [chi] => Ok((parse_vec(chi)?, vec![BigInt::zero(); n])),
        [chi, zeta] => {
            let z = parse_vec(zeta)?;
            let z = if z.is_empty() {
                vec![BigInt::zero(); n]
            } else {
                z
            };
            Ok((parse_vec(chi)?, z))
        }
        _ => Err(format!(
            "expected a character and multiplicities of lengths {r} and {n}"
        )),
    }
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Det { chi, zeta } => write!(f, "L({}; {})", fmt_vec(chi), fmt_vec(zeta)),
            Atom::Pair {
                chi,
                zeta,
                chi2,
                zeta2,
            } => write!(
                f,
                "P({}, {} | {}, {})",
                fmt_vec(chi),
                fmt_vec(zeta),
                fmt_vec(chi2),
                fmt_vec(zeta2)
            ),
        }
    }
}

impl fmt::Display for TautClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, a)) in self.terms.iter().enumerate() {
            crate::symforms::write_term(f, c, &a.to_string(), k == 0)?;
        }
        Ok(())
    }
}

/// Genus regime of a torus Picard computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    GenusAtLeastTwo,
    GenusOne,
    GenusZeroMarked,
    GenusZeroUnmarked,
}

impl Regime {
    pub fn of(g: u32, n: usize) -> Regime {
        match (g, n) {
            (0, 0) => Regime::GenusZeroUnmarked,
            (0, _) => Regime::GenusZeroMarked,
            (1, _) => Regime::GenusOne,
            _ => Regime::GenusAtLeastTwo,
        }
    }

    pub fn is_genus_zero(self) -> bool {
        matches!(self, Regime::GenusZeroMarked | Regime::GenusZeroUnmarked)
    }
}

/// A labeled basis element. Indices are 0-based here and 1-based in labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BasisSymbol {
    /// `⟨(e_i, 0), (0, f_j)⟩`
    M(usize, usize),
    /// `⟨(e_i, 0), (e_k, 0)⟩`
    S(usize, usize),
    /// `𝓛(e_i, 0)`
    D(usize),
    /// `𝓛(ε_i)^{1−(d,ε_i)} ⊗ ⟨ε_i, ε_i⟩^{(d,ε_i)/2}` for genus zero without marked points.
    E(usize),
}

fn subscript(idx: &[usize]) -> String {
    let one_based: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    if idx.iter().all(|&i| i < 9) {
        one_based.concat()
    } else {
        one_based.join(",")
    }
}

impl BasisSymbol {
    pub fn label(&self) -> String {
        match *self {
            BasisSymbol::M(i, j) => format!("M_{}", subscript(&[i, j])),
            BasisSymbol::S(i, k) => format!("S_{}", subscript(&[i, k])),
            BasisSymbol::D(i) => format!("D_{}", subscript(&[i])),
            BasisSymbol::E(i) => format!("E_{}", subscript(&[i])),
        }
    }
}

/// The free basis of `RPic(Bun_T^d)` for a torus of rank `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RPicBasis {
    pub g: u32,
    pub n: usize,
    pub r: usize,
    #[serde(serialize_with = "crate::abelian::decimal::vec")]
    pub d: Vec<BigInt>,
    pub regime: Regime,
    pub symbols: Vec<BasisSymbol>,
    /// Columns `ε_i` spanning `{χ : (d, χ) even}` (genus zero, no marked points).
    pub epsilon: Option<IntMatrix>,
}

impl RPicBasis {
    pub fn new(r: usize, g: u32, n: usize, d: &[BigInt]) -> Result<RPicBasis> {
        if d.len() != r {
            return Err(Error::Validation(format!(
                "degree has length {}, expected the torus rank {r}",
                d.len()
            )));
        }
        let regime = Regime::of(g, n);
        let mut symbols = Vec::new();
        let mut epsilon = None;
        match regime {
            Regime::GenusAtLeastTwo | Regime::GenusOne => {
                for i in 0..r {
                    for j in 0..n {
                        symbols.push(BasisSymbol::M(i, j));
                    }
                }
                for (i, k) in sym2_pairs(r) {
                    if i < k || regime == Regime::GenusAtLeastTwo {
                        symbols.push(BasisSymbol::S(i, k));
                    }
                }
                symbols.extend((0..r).map(BasisSymbol::D));
            }
            Regime::GenusZeroMarked => symbols.extend((0..r).map(|i| BasisSymbol::M(i, 0))),
            Regime::GenusZeroUnmarked => {
                let eps = even_pairing_lattice(d);
                symbols.extend((0..r).map(BasisSymbol::E));
                epsilon = Some(eps);
            }
        }
        Ok(RPicBasis {
            g,
            n,
            r,
            d: d.to_vec(),
            regime,
            symbols,
            epsilon,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.symbols.iter().map(BasisSymbol::label).collect()
    }

    /// The basis element as a tautological class.
    pub fn atom(&self, s: BasisSymbol) -> TautClass {
        let e = |i: usize| unit(self.r, i);
        let f = |j: usize| unit(self.n, j);
        let z = || vec![BigInt::zero(); self.n];
        match s {
            BasisSymbol::M(i, j) => TautClass::pair(e(i), z(), vec![BigInt::zero(); self.r], f(j)),
            BasisSymbol::S(i, k) => TautClass::pair(e(i), z(), e(k), z()),
            BasisSymbol::D(i) => TautClass::det(e(i), z()),
            BasisSymbol::E(i) => {
                let eps = self.epsilon.as_ref().expect("genus zero basis").col(i);
                let k = dot(&self.d, &eps);
                let half = &k / 2;
                TautClass::det(eps.clone(), z())
                    .scaled(&(BigInt::one() - &k))
                    .plus(TautClass::pair(eps.clone(), z(), eps, z()).scaled(&half))
            }
        }
    }

    pub fn atoms(&self) -> Vec<TautClass> {
        self.symbols.iter().map(|&s| self.atom(s)).collect()
    }

    fn require_positive_genus(&self) -> Result<()> {
        if self.regime.is_genus_zero() {
            Err(Error::Regime(
                "genus zero classes are normalized through the weight map".into(),
            ))
        } else {
            Ok(())
        }
    }

    /// Coordinates of a class in this basis.
    pub fn normalize(&self, c: &TautClass) -> Result<Vec<BigInt>> {
        c.check_shape(self.r, self.n)?;
        if self.regime.is_genus_zero() {
            return self.normalize_g0(c);
        }
        let mut full = vec![BigInt::zero(); full_len(self.r, self.n)];
        for (k, a) in &c.terms {
            let v = match a {
                Atom::Det { chi, zeta } => det_full(chi, zeta, self.n),
                Atom::Pair {
                    chi,
                    zeta,
                    chi2,
                    zeta2,
                } => pair_full(chi, zeta, chi2, zeta2),
            };
            for (x, y) in full.iter_mut().zip(v) {
                *x += k * y;
            }
        }
        Ok(self.fold_full(full))
    }

    /// Full coordinates (`M`, all `S_ik` with `i ≤ k`, `D`) onto the basis.
    fn fold_full(&self, mut full: Vec<BigInt>) -> Vec<BigInt> {
        if self.regime == Regime::GenusAtLeastTwo {
            return full;
        }
        let (r, n) = (self.r, self.n);
        let s0 = r * n;
        let d0 = s0 + sym2_dim(r);
        for i in 0..r {
            let s = full[s0 + sym2_index(r, i, i)].clone();
            full[d0 + i] += s * 2;
        }
        let mut out: Vec<BigInt> = full[..s0].to_vec();
        for (idx, (i, k)) in sym2_pairs(r).into_iter().enumerate() {
            if i < k {
                out.push(full[s0 + idx].clone());
            }
        }
        out.extend_from_slice(&full[d0..]);
        out
    }

    fn normalize_g0(&self, c: &TautClass) -> Result<Vec<BigInt>> {
        let w = weight(c, &self.d, 0);
        match &self.epsilon {
            None => Ok(w),
            Some(eps) => solve_in_lattice(eps, &w).ok_or_else(|| {
                Error::NotInLattice(format!(
                    "weight {} is not in the image lattice {{χ : (d, χ) even}}",
                    fmt_vec(&w)
                ))
            }),
        }
    }

    /// The class with the given coordinates.
    pub fn class_of(&self, coords: &[BigInt]) -> TautClass {
        let mut out = TautClass::zero();
        for (&s, c) in self.symbols.iter().zip(coords) {
            if !c.is_zero() {
                out = out.plus(self.atom(s).scaled(c));
            }
        }
        out
    }

    /// `r × len` matrix of weights of the basis elements.
    pub fn weight_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self
            .atoms()
            .iter()
            .map(|a| weight(a, &self.d, self.g))
            .collect();
        IntMatrix::from_cols(&cols, self.r)
    }

    /// `Bil^s` coordinates of `γ` on the basis.
    pub fn gamma_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.atoms().iter().map(|a| gamma(a).coords()).collect();
        IntMatrix::from_cols(&cols, sym2_dim(self.r))
    }

    /// Matrix of `w.` on the basis; column `k` is the image of basis element `k`.
    pub fn weyl_algebraic_action(&self, w: &IntMatrix) -> Result<IntMatrix> {
        self.require_positive_genus()?;
        let cols = self
            .atoms()
            .iter()
            .map(|a| self.normalize(&a.map_characters(w)))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_cols(&cols, self.len()))
    }

    /// `τ_T : Sym²(Λ*(T)) → RPic`, `χ·χ′ ↦ ⟨(χ,0),(χ′,0)⟩`.
    pub fn transgression_matrix(&self) -> Result<IntMatrix> {
        self.require_positive_genus()?;
        let z = vec![BigInt::zero(); self.n];
        let cols = sym2_pairs(self.r)
            .into_iter()
            .map(|(i, k)| {
                self.normalize(&TautClass::pair(
                    unit(self.r, i),
                    z.clone(),
                    unit(self.r, k),
                    z.clone(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_cols(&cols, self.len()))
    }

    /// `σ_T : Λ*(T) ⊗ ℤ^n → RPic`, `e_i ⊗ f_j ↦ ⟨(e_i,0),(0,f_j)⟩`.
    pub fn sigma_matrix(&self) -> Result<IntMatrix> {
        self.require_positive_genus()?;
        let mut cols = Vec::new();
        for i in 0..self.r {
            for j in 0..self.n {
                cols.push(self.normalize(&self.atom(BasisSymbol::M(i, j)))?);
            }
        }
        Ok(IntMatrix::from_cols(&cols, self.len()))
    }

    /// `ρ_T` on the basis: `𝓛(χ, ζ) ↦ χ`, pairings `↦ 0`.
    pub fn rho_matrix(&self) -> Result<IntMatrix> {
        self.require_positive_genus()?;
        let mut m = IntMatrix::zeros(self.r, self.len());
        for (k, s) in self.symbols.iter().enumerate() {
            if let BasisSymbol::D(i) = s {
                m[(*i, k)] = BigInt::one();
            }
        }
        Ok(m)
    }

    /// Matrix of the pullback of classes along `f : Λ*(T) → Λ*(T′)`, from
    /// this basis to `target` (same genus and marked points).
    pub fn pullback_matrix(&self, f: &IntMatrix, target: &RPicBasis) -> Result<IntMatrix> {
        if (self.g, self.n) != (target.g, target.n) || f.shape() != (target.r, self.r) {
            return Err(Error::Regime("incompatible torus pullback".into()));
        }
        let cols = self
            .atoms()
            .iter()
            .map(|a| target.normalize(&pullback_torus(f, a)))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_cols(&cols, target.len()))
    }

    /// The change of degree `𝔱*` from `RPic(Bun^d)` to `RPic(Bun^0)` (with
    /// `n ≥ 1`), written on the common basis.
    pub fn change_of_degree(&self) -> Result<IntMatrix> {
        self.require_positive_genus()?;
        if self.n == 0 {
            return Err(Error::Regime(
                "change of degree needs a marked point".into(),
            ));
        }
        let pos = |s: BasisSymbol| {
            self.symbols
                .iter()
                .position(|&t| t == s)
                .expect("basis symbol")
        };
        let mut t = IntMatrix::identity(self.len());
        for (k, &s) in self.symbols.iter().enumerate() {
            match s {
                BasisSymbol::S(i, l) => {
                    t[(pos(BasisSymbol::M(l, 0)), k)] -= &self.d[i];
                    t[(pos(BasisSymbol::M(i, 0)), k)] -= &self.d[l];
                }
                BasisSymbol::D(i) => {
                    t[(pos(BasisSymbol::M(i, 0)), k)] -= &self.d[i];
                }
                _ => {}
            }
        }
        Ok(t)
    }
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// HNF basis of `{χ : (d, χ) ∈ 2ℤ}`.
pub fn even_pairing_lattice(d: &[BigInt]) -> IntMatrix {
    let row = IntMatrix::from_big_rows(vec![d.to_vec()], d.len()).expect("row");
    lattice_preimage(&row, &IntMatrix::from_rows(&[[2]]))
}

fn full_len(r: usize, n: usize) -> usize {
    r * n + sym2_dim(r) + r
}

fn pair_full(chi: &[BigInt], zeta: &[BigInt], chi2: &[BigInt], zeta2: &[BigInt]) -> Vec<BigInt> {
    let (r, n) = (chi.len(), zeta.len());
    let mut v = vec![BigInt::zero(); full_len(r, n)];
    for i in 0..r {
        for j in 0..n {
            v[i * n + j] = &chi[i] * &zeta2[j] + &chi2[i] * &zeta[j];
        }
    }
    for (idx, (i, k)) in sym2_pairs(r).into_iter().enumerate() {
        v[r * n + idx] = if i == k {
            &chi[i] * &chi2[i]
        } else {
            &chi[i] * &chi2[k] + &chi[k] * &chi2[i]
        };
    }
    v
}

fn det_full(chi: &[BigInt], zeta: &[BigInt], n: usize) -> Vec<BigInt> {
    let r = chi.len();
    let zero = vec![BigInt::zero(); r];
    let mut v = pair_full(chi, &vec![BigInt::zero(); n], &zero, zeta);
    for (idx, (i, k)) in sym2_pairs(r).into_iter().enumerate() {
        v[r * n + idx] = if i == k {
            binom2(&chi[i])
        } else {
            &chi[i] * &chi[k]
        };
    }
    let d0 = r * n + sym2_dim(r);
    v[d0..d0 + r].clone_from_slice(&chi[..r]);
    v
}

/// `a(a − 1)/2` for every integer `a`.
pub fn binom2(a: &BigInt) -> BigInt {
    (a * (a - BigInt::one())).div_floor(&BigInt::from(2))
}

/// `w^d_T`, evaluated atom by atom.
pub fn weight(c: &TautClass, d: &[BigInt], g: u32) -> Vec<BigInt> {
    let r = d.len();
    let mut out = vec![BigInt::zero(); r];
    let sum = |z: &[BigInt]| z.iter().sum::<BigInt>();
    let one_minus_g = BigInt::one() - BigInt::from(g);
    for (k, a) in &c.terms {
        match a {
            Atom::Det { chi, zeta } => {
                let s = k * (dot(d, chi) + sum(zeta) + &one_minus_g);
                for (o, x) in out.iter_mut().zip(chi) {
                    *o += &s * x;
                }
            }
            Atom::Pair {
                chi,
                zeta,
                chi2,
                zeta2,
            } => {
                let s1 = k * (dot(d, chi2) + sum(zeta2));
                let s2 = k * (dot(d, chi) + sum(zeta));
                for i in 0..r {
                    out[i] += &s1 * &chi[i] + &s2 * &chi2[i];
                }
            }
        }
    }
    out
}

/// `γ_T`: `𝓛(χ, ζ) ↦ χ⊗χ`, `⟨(χ,ζ),(χ′,ζ′)⟩ ↦ χ⊗χ′ + χ′⊗χ`.
pub fn gamma(c: &TautClass) -> BilForm {
    let r = c
        .terms
        .first()
        .map(|(_, a)| match a {
            Atom::Det { chi, .. } | Atom::Pair { chi, .. } => chi.len(),
        })
        .unwrap_or(0);
    gamma_rank(c, r)
}

/// [`gamma`] with an explicit rank, so that the empty class has a shape.
pub fn gamma_rank(c: &TautClass, r: usize) -> BilForm {
    let mut g = IntMatrix::zeros(r, r);
    for (k, a) in &c.terms {
        let (x, y, twice) = match a {
            Atom::Det { chi, .. } => (chi, chi, false),
            Atom::Pair { chi, chi2, .. } => (chi, chi2, true),
        };
        for i in 0..r {
            for j in 0..r {
                let mut v = &x[i] * &y[j];
                if twice {
                    v += &y[i] * &x[j];
                }
                g[(i, j)] += k * v;
            }
        }
    }
    BilForm::new(g).expect("symmetric by construction")
}

/// `w^d_T` in genus zero.
pub fn weight_g0(c: &TautClass, d: &[BigInt]) -> Vec<BigInt> {
    weight(c, d, 0)
}

pub fn g0_basis(r: usize, n: usize, d: &[BigInt]) -> Result<RPicBasis> {
    RPicBasis::new(r, 0, n, d)
}

/// Replaces the character slots by their images under `f`.
pub fn pullback_torus(f: &IntMatrix, c: &TautClass) -> TautClass {
    c.map_characters(f)
}

/// Kernel and image data of `w ⊕ γ` on `RPic(Bun_T^d)` for `g ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberRestrictionData {
    /// HNF basis of `ker(w ⊕ γ)` in basis coordinates.
    pub j_image: IntMatrix,
    /// Basis of `H_{g,n}`: columns `(m, ζ)` for `g ≥ 2`, columns `ζ` for `g = 1`.
    pub h_basis: IntMatrix,
    /// Images `j(e_i ⊗ h)` in basis coordinates, `i` major.
    pub j_matrix: IntMatrix,
    /// Elementary divisors of the image of `w ⊕ γ` in `Λ*(T) ⊕ Bil^s(Λ(T))`.
    #[serde(serialize_with = "crate::abelian::decimal::vec")]
    pub image_invariant_factors: Vec<BigInt>,
}

pub fn fiber_restriction_data(
    r: usize,
    g: u32,
    n: usize,
    d: &[BigInt],
) -> Result<FiberRestrictionData> {
    if g == 0 {
        return Err(Error::Regime("fiber restriction data needs g ≥ 1".into()));
    }
    let basis = RPicBasis::new(r, g, n, d)?;
    let stacked = basis.weight_matrix().vstack(&basis.gamma_matrix());
    let j_image = kernel_basis(&stacked);

    let h_row = if g >= 2 {
        let mut row = vec![BigInt::from(2 * g as i64 - 2)];
        row.extend(std::iter::repeat_n(BigInt::one(), n));
        IntMatrix::from_big_rows(vec![row], n + 1)?
    } else {
        IntMatrix::from_big_rows(vec![vec![BigInt::one(); n]], n)?
    };
    let h_basis = kernel_basis(&h_row);

    let mut cols = Vec::new();
    let z = vec![BigInt::zero(); n];
    for i in 0..r {
        for h in h_basis.columns() {
            let (m, zeta) = if g >= 2 {
                (h[0].clone(), h[1..].to_vec())
            } else {
                (BigInt::zero(), h.clone())
            };
            // ⟨𝓛_{e_i}, ω^m(Σ ζ_j σ_j)⟩ with ⟨𝓛_χ, ω⟩ = ⟨χ, χ⟩ − 2𝓛(χ).
            let omega = TautClass::pair(unit(r, i), z.clone(), unit(r, i), z.clone())
                .plus(TautClass::det(unit(r, i), z.clone()).scaled(&BigInt::from(-2)))
                .scaled(&m);
            let sections = TautClass::pair(unit(r, i), z.clone(), vec![BigInt::zero(); r], zeta);
            cols.push(basis.normalize(&omega.plus(sections))?);
        }
    }
    let j_matrix = IntMatrix::from_cols(&cols, basis.len());
    if !same_lattice(&j_matrix, &j_image) {
        return Err(Error::Verification(
            "ker(w ⊕ γ) differs from the image of Λ*(T) ⊗ H_{g,n}".into(),
        ));
    }
    let image = hnf_basis(&stacked);
    let image_invariant_factors = snf(&image).diagonal();
    Ok(FiberRestrictionData {
        j_image,
        h_basis,
        j_matrix,
        image_invariant_factors,
    })
}
