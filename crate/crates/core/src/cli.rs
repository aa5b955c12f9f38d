//! Job specifications, dispatch and report rendering for the `rpic` binary.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abelian::{same_lattice, IntLiteral, IntMatrix};
use crate::error::{Error, Result};
use crate::picard::{
    rpic, rpic_nonreductive, rpic_torus, Degree, NonReductive, PicardPresentation,
};
use crate::rootdata::{Isogeny, RootDatum, Series};
use crate::symforms::{
    b_map, basic_inner_product, elements, fixed_lattice, sym2_action, sym2_dim, sym2_invariants,
    sym2_pairs, Sym2Element,
};
use crate::taut::{
    fiber_restriction_data, gamma_rank, weight, weight_g0, BasisSymbol, RPicBasis, TautClass,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Pi1,
    Sym2Invariants,
    BasicForm,
    Picard,
    WeightImage,
    TautNormalize,
    FiberData,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Pi1 => "pi1",
            Command::Sym2Invariants => "sym2-invariants",
            Command::BasicForm => "basic-form",
            Command::Picard => "picard",
            Command::WeightImage => "weight-image",
            Command::TautNormalize => "taut-normalize",
            Command::FiberData => "fiber-data",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Command> {
        <Command as clap::ValueEnum>::from_str(s, false)
            .map_err(|_| Error::Validation(format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// A group, either as a named preset or as explicit root data.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Sl {
        n: usize,
    },
    Gl {
        n: usize,
    },
    Pgl {
        n: usize,
    },
    /// `Sp_n` with `n` even.
    Sp {
        n: usize,
    },
    So {
        n: usize,
    },
    Torus {
        rank: usize,
    },
    Classical {
        series: String,
        rank: usize,
        #[serde(default = "default_isogeny")]
        isogeny: Isogeny,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    Raw {
        rank: usize,
        roots: IntMatrix,
        coroots: IntMatrix,
    },
    ReductiveQuotientOf {
        name: String,
        quotient: Box<GroupSpec>,
    },
}

fn default_isogeny() -> Isogeny {
    Isogeny::Sc
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DegreeSpec {
    Class(Vec<IntLiteral>),
    Lift(Vec<IntLiteral>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub group: GroupSpec,
    #[serde(default)]
    pub g: u32,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub degree: Option<DegreeSpec>,
    #[serde(default)]
    pub command: Option<Command>,
    /// Tautological class for `taut-normalize`.
    #[serde(default)]
    pub class: Option<String>,
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<JobSpec> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e)))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub verify: bool,
    pub weyl_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            verify: false,
            weyl_cap: DEFAULT_WEYL_CAP,
        }
    }
}

/// A finished computation, renderable as text or JSON.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
                s.push('\n');
                s
            }
        }
    }
}

/// Process exit code for an error: 3 for verification failures, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_verification() {
        3
    } else {
        2
    }
}

/// The root datum of the spec and, for non-reductive input, the group name.
pub fn build_group(spec: &GroupSpec) -> Result<(RootDatum, Option<String>)> {
    let positive = |n: usize, what: &str| {
        if n == 0 {
            Err(Error::Validation(format!("{what} needs n ≥ 1")))
        } else {
            Ok(n)
        }
    };
    let rd = match spec {
        GroupSpec::Sl { n } => type_a(positive(*n, "sl")?, Isogeny::Sc)?,
        GroupSpec::Pgl { n } => type_a(positive(*n, "pgl")?, Isogeny::Ad)?,
        GroupSpec::Gl { n } => RootDatum::gl(positive(*n, "gl")?)?,
        GroupSpec::Sp { n } => {
            if *n == 0 || n % 2 != 0 {
                return Err(Error::Validation(format!(
                    "sp needs a positive even n, got {n}"
                )));
            }
            if *n == 2 {
                RootDatum::classical(Series::A, 1, Isogeny::Sc)?
            } else {
                RootDatum::classical(Series::C, n / 2, Isogeny::Sc)?
            }
        }
        GroupSpec::So { n } => special_orthogonal(*n)?,
        GroupSpec::Torus { rank } => RootDatum::torus(*rank),
        GroupSpec::Classical {
            series,
            rank,
            isogeny,
        } => RootDatum::classical(Series::parse(series)?, *rank, *isogeny)?,
        GroupSpec::Product { factors } => {
            let mut acc = RootDatum::torus(0);
            for f in factors {
                let (rd, name) = build_group(f)?;
                if name.is_some() {
                    return Err(Error::Validation(
                        "product factors must be reductive".into(),
                    ));
                }
                acc = acc.product(&rd);
            }
            acc
        }
        GroupSpec::Raw {
            rank,
            roots,
            coroots,
        } => RootDatum::from_raw(*rank, roots.clone(), coroots.clone())?,
        GroupSpec::ReductiveQuotientOf { name, quotient } => {
            let (rd, inner) = build_group(quotient)?;
            if inner.is_some() {
                return Err(Error::Validation("the quotient must be reductive".into()));
            }
            return Ok((rd, Some(name.clone())));
        }
    };
    Ok((rd, None))
}

fn type_a(n: usize, iso: Isogeny) -> Result<RootDatum> {
    if n == 1 {
        Ok(RootDatum::torus(0))
    } else {
        RootDatum::classical(Series::A, n - 1, iso)
    }
}

/// `SO_n` on the standard lattice `ℤ^{⌊n/2⌋}`.
fn special_orthogonal(n: usize) -> Result<RootDatum> {
    let m = n / 2;
    if n < 2 {
        return Err(Error::Validation(format!("so needs n ≥ 2, got {n}")));
    }
    if n == 2 {
        return Ok(RootDatum::torus(1));
    }
    let diff = |i: usize| {
        let mut v = vec![0i64; m];
        v[i] = 1;
        v[i + 1] = -1;
        v
    };
    let mut roots: Vec<Vec<i64>> = (0..m - 1).map(diff).collect();
    let mut coroots = roots.clone();
    if n % 2 == 1 {
        let mut a = vec![0i64; m];
        a[m - 1] = 1;
        let mut c = vec![0i64; m];
        c[m - 1] = 2;
        roots.push(a);
        coroots.push(c);
    } else {
        let mut a = vec![0i64; m];
        a[m - 2] = 1;
        a[m - 1] = 1;
        roots.push(a.clone());
        coroots.push(a);
    }
    RootDatum::from_raw(
        m,
        IntMatrix::from_rows(&roots),
        IntMatrix::from_rows(&coroots),
    )
}

fn degree_of(job: &JobSpec, rd: &RootDatum) -> Result<Degree> {
    let to_big = |v: &[IntLiteral]| -> Result<Vec<BigInt>> {
        v.iter().cloned().map(IntLiteral::into_bigint).collect()
    };
    let degree = match &job.degree {
        None => Degree::Class(vec![BigInt::zero(); rd.rank()]),
        Some(DegreeSpec::Class(v)) => Degree::Class(to_big(v)?),
        Some(DegreeSpec::Lift(v)) => Degree::Lift(to_big(v)?),
    };
    if degree.vector().len() != rd.rank() {
        return Err(Error::Validation(format!(
            "degree vector length {} differs from the rank {}",
            degree.vector().len(),
            rd.rank()
        )));
    }
    Ok(degree)
}

/// The lift used where a concrete `d` is needed and no lift search applies.
fn concrete_lift(rd: &RootDatum, degree: &Degree) -> Vec<BigInt> {
    match degree {
        Degree::Class(v) => rd.reduce_class(v),
        Degree::Lift(v) => v.clone(),
    }
}

/// Runs a job. `command` overrides the command in the spec.
pub fn run(job: &JobSpec, command: Option<Command>, opts: &Options) -> Result<Report> {
    let command = command.or(job.command).ok_or_else(|| {
        Error::Validation("no command given in the spec or on the command line".into())
    })?;
    let (rd, nonreductive) = build_group(&job.group)?;
    let names = Names::for_group(&rd);
    let mut ctx = Ctx {
        rd: &rd,
        job,
        opts,
        names,
        text: String::new(),
    };
    let group = match &nonreductive {
        Some(name) => format!("{name} (reductive quotient {})", rd.describe()),
        None => rd.describe(),
    };
    writeln!(ctx.text, "group: {group}").ok();
    let result = match command {
        Command::Pi1 => ctx.pi1()?,
        Command::Sym2Invariants => ctx.sym2_invariants()?,
        Command::BasicForm => ctx.basic_form()?,
        Command::Picard => ctx.picard(nonreductive.as_deref())?,
        Command::WeightImage => ctx.weight_image()?,
        Command::TautNormalize => ctx.taut_normalize()?,
        Command::FiberData => ctx.fiber_data()?,
    };
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command.name(),
        "group": {
            "description": group,
            "rank": rd.rank(),
            "semisimple_rank": rd.semisimple_rank(),
            "types": rd.labels(),
            "root_datum": rd,
        },
        "g": job.g,
        "n": job.n,
        "result": result,
    });
    Ok(Report {
        command,
        json,
        text: ctx.text,
    })
}

/// Character names for text output: `ϖ` for simply connected semisimple
/// groups, `e` otherwise.
struct Names {
    symbol: &'static str,
    r: usize,
}

impl Names {
    fn for_group(rd: &RootDatum) -> Names {
        let sc = !rd.is_torus()
            && rd.semisimple_rank() == rd.rank()
            && *rd.simple_coroots() == IntMatrix::identity(rd.rank());
        Names {
            symbol: if sc { "ϖ" } else { "e" },
            r: rd.rank(),
        }
    }

    fn basis(&self, i: usize) -> String {
        if self.r == 1 {
            self.symbol.to_string()
        } else {
            format!("{}{}", self.symbol, i + 1)
        }
    }

    fn character(&self, v: &[BigInt]) -> String {
        let terms: Vec<(BigInt, String)> = v
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), self.basis(i)))
            .collect();
        combination(&terms)
    }

    fn sym2(&self, q: &Sym2Element) -> String {
        let terms: Vec<(BigInt, String)> = sym2_pairs(q.rank())
            .into_iter()
            .zip(q.coeffs())
            .map(|((i, j), c)| {
                let mono = if i == j {
                    format!("{}²", self.basis(i))
                } else {
                    format!("{}{}", self.basis(i), self.basis(j))
                };
                (c.clone(), mono)
            })
            .collect();
        combination(&terms)
    }

    fn symbol_expression(&self, basis: &RPicBasis, s: BasisSymbol) -> String {
        match s {
            BasisSymbol::M(i, j) => format!("<({},0),(0,f{})>", self.basis(i), j + 1),
            BasisSymbol::S(i, k) => format!("<({},0),({},0)>", self.basis(i), self.basis(k)),
            BasisSymbol::D(i) => format!("L({},0)", self.basis(i)),
            BasisSymbol::E(_) => basis.atom(s).to_string(),
        }
    }
}

fn combination(terms: &[(BigInt, String)]) -> String {
    let mut out = String::new();
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        crate::symforms::write_term(&mut out, c, mono, first).ok();
        first = false;
    }
    if first {
        out.push('0');
    }
    out
}

fn labeled(labels: &[String], coords: &[BigInt]) -> String {
    let terms: Vec<(BigInt, String)> = labels
        .iter()
        .cloned()
        .zip(coords.iter().cloned())
        .map(|(l, c)| (c, l))
        .collect();
    combination(&terms)
}

fn lattice_text(m: &IntMatrix) -> String {
    if m.cols() == 0 {
        return "0".into();
    }
    if m.rows() == 1 && m.cols() == 1 {
        let k = &m.entries()[0];
        return if k.is_one() {
            "ℤ".into()
        } else {
            format!("{k}ℤ")
        };
    }
    let cols: Vec<String> = m
        .columns()
        .iter()
        .map(|c| {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    format!("span{{{}}} ⊂ ℤ^{}", cols.join(", "), m.rows())
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

struct Ctx<'a> {
    rd: &'a RootDatum,
    job: &'a JobSpec,
    opts: &'a Options,
    names: Names,
    text: String,
}

impl Ctx<'_> {
    fn pi1(&mut self) -> Result<Value> {
        let p = self.rd.pi1()?;
        writeln!(self.text, "π₁ = {}", p.pi1).ok();
        writeln!(self.text, "torsion part = {}", p.torsion_part).ok();
        writeln!(self.text, "free quotient = {}", p.free_quotient).ok();
        let mut out = json!({
            "pi1": p.pi1,
            "invariant_factors": strings(p.pi1.invariant_factors()),
            "torsion_part": p.torsion_part,
            "free_quotient": p.free_quotient,
        });
        if self.job.degree.is_some() {
            let d = degree_of(self.job, self.rd)?;
            let class = self.rd.reduce_class(d.vector());
            writeln!(
                self.text,
                "degree class representative = {:?}",
                strings(&class)
            )
            .ok();
            out["degree_class"] = json!(strings(&class));
        }
        Ok(out)
    }

    fn sym2_invariants(&mut self) -> Result<Value> {
        let inv = sym2_invariants(self.rd);
        let r = self.rd.rank();
        let on_char = elements(r, &inv.on_char);
        let on_sc = elements(self.rd.semisimple_rank(), &inv.on_sc);
        writeln!(self.text, "Sym²(Λ*)^W has rank {}", on_char.len()).ok();
        for q in &on_char {
            writeln!(self.text, "  {}", self.names.sym2(q)).ok();
        }
        let sc_names = Names {
            symbol: "ϖ",
            r: self.rd.semisimple_rank(),
        };
        writeln!(
            self.text,
            "on the simply connected cover: rank {}",
            on_sc.len()
        )
        .ok();
        for q in &on_sc {
            writeln!(self.text, "  {}", sc_names.sym2(q)).ok();
        }
        let mut out = json!({ "on_char": on_char, "on_sc": on_sc });
        if self.opts.verify {
            let group = self.rd.weyl_enumerate(self.opts.weyl_cap)?;
            let actions: Vec<IntMatrix> = group.iter().map(sym2_action).collect();
            let full = fixed_lattice(sym2_dim(r), &actions);
            if !same_lattice(&full, &inv.on_char) {
                return Err(Error::Verification(
                    "reflection invariants differ from full Weyl group invariants".into(),
                ));
            }
            writeln!(self.text, "verified against |W| = {}", group.len()).ok();
            out["weyl_order"] = json!(group.len());
        }
        Ok(out)
    }

    fn basic_form(&mut self) -> Result<Value> {
        let l = self.rd.semisimple_rank();
        let names = Names { symbol: "ϖ", r: l };
        let mut factors = Vec::new();
        for f in self.rd.factors() {
            let q = basic_inner_product(self.rd, f)?;
            let b = b_map(&q);
            let on_coroots: Vec<String> = f
                .indices
                .iter()
                .map(|&i| b.gram().entries()[i * l + i].to_string())
                .collect();
            writeln!(
                self.text,
                "{} on nodes {:?}: q = {}, B(α∨,α∨) = {:?}",
                f.cartan_type,
                f.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                names.sym2(&q),
                on_coroots
            )
            .ok();
            factors.push(json!({
                "type": f.cartan_type.to_string(),
                "nodes": f.indices,
                "form": q,
                "gram": b.gram(),
                "coroot_norms": on_coroots,
                "short_coroots": f.short_coroot_indices(),
                "positive_definite": b.is_positive_definite(),
            }));
        }
        if factors.is_empty() {
            writeln!(self.text, "no simple factors").ok();
        }
        Ok(json!({ "factors": factors }))
    }

    fn picard(&mut self, nonreductive: Option<&str>) -> Result<Value> {
        let degree = degree_of(self.job, self.rd)?;
        let (g, n) = (self.job.g, self.job.n);
        let p = match nonreductive {
            Some(name) => rpic_nonreductive(
                &NonReductive {
                    name: name.to_string(),
                    reductive_quotient: self.rd.clone(),
                },
                g,
                n,
                &degree,
            )?,
            None if g >= 1 => rpic(
                self.rd,
                g,
                n,
                &Degree::Lift(concrete_lift(self.rd, &degree)),
            )?,
            None => rpic(self.rd, g, n, &degree)?,
        };
        let mut out = serde_json::to_value(&p).expect("presentation");
        if self.opts.verify && g >= 1 {
            let law = self.rank_law(&p)?;
            writeln!(self.text, "rank law: {}", if law { "ok" } else { "FAILED" }).ok();
            out["rank_law"] = json!(law);
            if !law {
                return Err(Error::Verification("rank law fails".into()));
            }
        }
        self.write_presentation(&p);
        Ok(out)
    }

    fn rank_law(&self, p: &PicardPresentation) -> Result<bool> {
        let ab = &p.ab_char_basis;
        let d_ab = ab.transpose().mul_vec(&p.degree);
        let torus = rpic_torus(&RootDatum::torus(ab.cols()), p.g, p.n, &d_ab)?;
        Ok(p.free_rank == torus.free_rank + self.rd.factors().len())
    }

    fn write_presentation(&mut self, p: &PicardPresentation) {
        let t = &mut self.text;
        writeln!(
            t,
            "g = {}, n = {}, d = {:?}, class = {:?}",
            p.g,
            p.n,
            strings(&p.degree),
            strings(&p.degree_class)
        )
        .ok();
        if let Some(prov) = &p.provenance {
            writeln!(t, "via {prov}").ok();
        }
        writeln!(t, "RPic is free of rank {}", p.free_rank).ok();
        if let Some(img) = &p.weight_image {
            writeln!(t, "weight image: {}", lattice_text(img)).ok();
            if let Some(idx) = &p.weight_image_index {
                writeln!(t, "index in Λ*: {idx}").ok();
            }
            for (gen, c) in p.generators.iter().zip(img.columns()) {
                writeln!(t, "  {} ↦ {}", gen.label, self.names.character(&c)).ok();
            }
        } else {
            let basis = RPicBasis::new(self.rd.rank(), p.g, p.n, &p.degree).expect("basis");
            let tau = p.transgression_matrix.as_ref();
            for (k, gen) in p.generators.iter().enumerate() {
                let mut line = gen.label.clone();
                let unit_symbol = basis
                    .labels()
                    .iter()
                    .position(|l| *l == gen.label)
                    .map(|i| basis.symbols[i]);
                match unit_symbol {
                    Some(s) => write!(line, " = {}", self.names.symbol_expression(&basis, s)).ok(),
                    None => write!(line, " = {}", labeled(&p.torus_basis, &gen.coords)).ok(),
                };
                if let Some(tau) = tau {
                    for (j, q) in p.sym2_invariants.iter().enumerate() {
                        let col = tau.col(j);
                        let is_unit = col.iter().enumerate().all(|(i, x)| {
                            if i == k {
                                x.is_one()
                            } else {
                                x.is_zero()
                            }
                        });
                        if is_unit {
                            write!(line, " = τ({})", self.names.sym2(q)).ok();
                        }
                    }
                }
                writeln!(t, "  {line}").ok();
            }
            let gen_labels: Vec<String> = p.generators.iter().map(|g| g.label.clone()).collect();
            if let Some(tau) = tau {
                for (j, q) in p.sym2_invariants.iter().enumerate() {
                    writeln!(
                        t,
                        "τ({}) = {}",
                        self.names.sym2(q),
                        labeled(&gen_labels, &tau.col(j))
                    )
                    .ok();
                }
            }
            if let Some(ab) = &p.ab_pullback_matrix {
                for (j, l) in p.ab_basis.iter().enumerate() {
                    writeln!(t, "ab*({l}) = {}", labeled(&gen_labels, &ab.col(j))).ok();
                }
            }
            if let Some(po) = &p.pushout {
                writeln!(
                    t,
                    "push-out: {}",
                    if po.ok {
                        "verified"
                    } else {
                        "not an isomorphism"
                    }
                )
                .ok();
            }
        }
        if let Some(star) = p.condition_star {
            writeln!(t, "condition (*): {}", if star { "holds" } else { "fails" }).ok();
        }
        for f in &p.flags {
            writeln!(t, "note: {f}").ok();
        }
    }

    fn weight_image(&mut self) -> Result<Value> {
        if self.job.g != 0 {
            return Err(Error::Validation("weight-image needs g = 0".into()));
        }
        let degree = degree_of(self.job, self.rd)?;
        let p = rpic(self.rd, 0, self.job.n, &degree)?;
        let img = p.weight_image.clone().expect("genus zero");
        writeln!(self.text, "d = {:?}", strings(&p.degree)).ok();
        writeln!(self.text, "Ω = {}", lattice_text(&img)).ok();
        if let Some(idx) = &p.weight_image_index {
            writeln!(self.text, "index in Λ*: {idx}").ok();
        }
        for f in &p.flags {
            writeln!(self.text, "note: {f}").ok();
        }
        Ok(json!({
            "degree": strings(&p.degree),
            "weight_image": img,
            "rank": p.free_rank,
            "index": p.weight_image_index.as_ref().map(ToString::to_string),
            "condition_star": p.condition_star,
            "flags": p.flags,
        }))
    }

    fn taut_normalize(&mut self) -> Result<Value> {
        let src =
            self.job.class.as_deref().ok_or_else(|| {
                Error::Validation("taut-normalize needs a \"class\" field".into())
            })?;
        let (r, g, n) = (self.rd.rank(), self.job.g, self.job.n);
        let d = concrete_lift(self.rd, &degree_of(self.job, self.rd)?);
        let c = TautClass::parse(src, r, n)?;
        let basis = RPicBasis::new(r, g, n, &d)?;
        let coords = basis.normalize(&c)?;
        let labels = basis.labels();
        let w = if g == 0 {
            weight_g0(&c, &d)
        } else {
            weight(&c, &d, g)
        };
        writeln!(self.text, "{c} = {}", labeled(&labels, &coords)).ok();
        writeln!(self.text, "weight = {}", self.names.character(&w)).ok();
        let mut out = json!({
            "class": c.to_string(),
            "basis": labels,
            "coords": strings(&coords),
            "weight": strings(&w),
        });
        if g >= 1 {
            let gm = gamma_rank(&c, r);
            writeln!(
                self.text,
                "γ = {:?}",
                gm.gram()
                    .to_rows()
                    .iter()
                    .map(|row| strings(row))
                    .collect::<Vec<_>>()
            )
            .ok();
            out["gamma"] = json!(gm.gram());
        }
        Ok(out)
    }

    fn fiber_data(&mut self) -> Result<Value> {
        let d = concrete_lift(self.rd, &degree_of(self.job, self.rd)?);
        let data = fiber_restriction_data(self.rd.rank(), self.job.g, self.job.n, &d)?;
        writeln!(self.text, "ker(w ⊕ γ) has rank {}", data.j_image.cols()).ok();
        writeln!(
            self.text,
            "image invariant factors: {:?}",
            strings(&data.image_invariant_factors)
        )
        .ok();
        Ok(serde_json::to_value(&data).expect("fiber data"))
    }
}
