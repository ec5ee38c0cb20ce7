//! One runner per subcommand. Each returns results plus the identity checks
//! it performed; a failed check turns into exit code 2.

use crate::config::{ConesFile, Coords, JobConfig};
use crate::output::{self, approx, element, exact, real};
use serde_json::{json, Value};
use shintani_core::analytic::lerch_series;
use shintani_core::arith::{int, rat, SampleRng};
use shintani_core::arithmetic_data::{characters, units_from_user, units_plus, RayClassGroup, UnitGroupPlus};
use shintani_core::hecke::{
    euler_product, functional_equation_check, gauss_product_check, gauss_sum_at, hecke_from_lerch_exact,
    hecke_from_lerch_numeric, imprimitive_check, is_critical, ler_vector, HeckeSetup, Point,
};
use shintani_core::ideals::{primes_above, FractionalIdeal};
use shintani_core::koszul_cohomology::{log_cohomology_for_field, sym_tate_dims, LogTable};
use shintani_core::numberfield::{FieldElement, NumberField};
use shintani_core::shintani_cones::{decompose, from_user_cones, random_cone, verify_fundamental_domain, ShintaniDecomposition};
use shintani_core::shintani_values::{cocycle_check, lerch_value, trivial_value};
use shintani_core::torsion::xi_can;
use shintani_core::{Error, Rat, Result};
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Field,
    Cones,
    LerchNeg,
    LerchPos,
    Gauss,
    Hecke,
    Funeq,
    Imprimitive,
    Cohomology,
    LerVector,
    VerifyAll,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Field => "field",
            Task::Cones => "cones",
            Task::LerchNeg => "lerch-neg",
            Task::LerchPos => "lerch-pos",
            Task::Gauss => "gauss",
            Task::Hecke => "hecke",
            Task::Funeq => "funeq",
            Task::Imprimitive => "imprimitive",
            Task::Cohomology => "cohomology",
            Task::LerVector => "ler-vector",
            Task::VerifyAll => "verify-all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: Value,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "holds": self.holds, "detail": self.detail })
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub provenance: &'static str,
    pub results: Value,
    pub checks: Vec<Check>,
    /// Rows for the optional CSV export.
    pub csv: Option<String>,
}

pub struct Ctx {
    pub cfg: JobConfig,
    pub nf: NumberField,
    pub units: UnitGroupPlus,
    pub modulus: FractionalIdeal,
    pub prime_bound: u64,
    pub tolerance: f64,
    pub jobs: usize,
}

/// Order-preserving parallel map over scoped threads.
pub fn par_map<T: Sync, R: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let f = &f;
    std::thread::scope(|sc| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| sc.spawn(move || c.iter().map(f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn to_element(nf: &NumberField, c: &Coords) -> Result<FieldElement> {
    let g = nf.degree();
    if c.len() > g {
        return Err(Error::InvalidInput(format!("element has {} coordinates, field degree is {g}", c.len())));
    }
    let mut pc = c.iter().map(|x| x.to_rat()).collect::<Result<Vec<Rat>>>()?;
    pc.resize(g, rat(0, 1));
    Ok(nf.from_power(&pc))
}

pub fn build_field(cfg: &JobConfig) -> Result<NumberField> {
    let mp: Vec<_> = cfg.field.min_poly.iter().map(|&c| int(c)).collect();
    if mp.len() == 2 && cfg.field.min_poly == [0, 1] {
        return Ok(NumberField::rationals());
    }
    let basis = match &cfg.field.basis {
        None => None,
        Some(rows) => Some(
            rows.iter()
                .map(|r| r.iter().map(|x| x.to_rat()).collect::<Result<Vec<Rat>>>())
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    NumberField::new(&mp, basis)
}

pub fn build_ideal(nf: &NumberField, gens: &[Coords]) -> Result<FractionalIdeal> {
    let gens = gens.iter().map(|c| to_element(nf, c)).collect::<Result<Vec<_>>>()?;
    FractionalIdeal::from_generators(nf, &gens)
}

impl Ctx {
    pub fn new(cfg: JobConfig, prime_bound: u64, jobs: usize) -> Result<Self> {
        let nf = build_field(&cfg)?;
        let units = match &cfg.field.units {
            Some(us) => {
                let us = us.iter().map(|c| to_element(&nf, c)).collect::<Result<Vec<_>>>()?;
                units_from_user(&nf, us, cfg.field.units_fundamental)?
            }
            None => units_plus(&nf)?,
        };
        let modulus = build_ideal(&nf, &cfg.modulus.generators)?;
        if !modulus.is_integral() {
            return Err(Error::NotIntegral);
        }
        let tolerance = cfg.task.tolerance.unwrap_or(1e-6);
        Ok(Ctx { cfg, nf, units, modulus, prime_bound, tolerance, jobs: jobs.max(1) })
    }

    fn gens(&self) -> &[FieldElement] {
        &self.units.generators
    }

    fn setup(&self) -> Result<HeckeSetup> {
        HeckeSetup::new(&self.nf, &self.units, &self.modulus)
    }
}

/// Fills in the per-task defaults so that they are echoed and hashed.
pub fn resolve_defaults(task: Task, cfg: &mut JobConfig) {
    let t = &mut cfg.task;
    let set_k = |k: &mut Vec<u32>, d: &[u32]| {
        if k.is_empty() {
            *k = d.to_vec();
        }
    };
    match task {
        Task::LerchNeg => set_k(&mut t.k, &[1]),
        Task::LerchPos => {
            if t.s.is_empty() {
                t.s = vec![3.0];
            }
        }
        Task::Hecke => {
            if t.k.is_empty() && t.s.is_empty() {
                t.k = vec![1];
                t.s = vec![3.0];
            }
        }
        Task::Funeq => set_k(&mut t.k, &[2]),
        Task::Imprimitive => {
            if t.k.is_empty() && t.s.is_empty() {
                t.k = vec![1, 2];
                t.s = vec![2.0];
            }
        }
        Task::LerVector => set_k(&mut t.n, &[2, 3]),
        Task::Cones => {
            t.samples.get_or_insert(200);
            t.seed.get_or_insert(1);
        }
        Task::Cohomology => {
            t.k_max.get_or_insert(12);
        }
        _ => {}
    }
}

pub fn run(task: Task, ctx: &Ctx) -> Result<Outcome> {
    match task {
        Task::Field => field(ctx),
        Task::Cones => cones(ctx),
        Task::LerchNeg => lerch_neg(ctx),
        Task::LerchPos => lerch_pos(ctx),
        Task::Gauss => gauss(ctx),
        Task::Hecke => hecke(ctx),
        Task::Funeq => funeq(ctx),
        Task::Imprimitive => imprimitive(ctx),
        Task::Cohomology => cohomology(ctx),
        Task::LerVector => ler(ctx),
        Task::VerifyAll => verify_all(ctx.jobs),
    }
}

fn outcome(provenance: &'static str, results: Value, checks: Vec<Check>) -> Outcome {
    Outcome { provenance, results, checks, csv: None }
}

fn field(ctx: &Ctx) -> Result<Outcome> {
    let nf = &ctx.nf;
    let g = nf.degree();
    let narrow = RayClassGroup::new(nf, &ctx.units, &FractionalIdeal::unit(nf))?;
    let ray = RayClassGroup::new(nf, &ctx.units, &ctx.modulus)?;
    let chars = characters(nf, &ray)?;
    let emb: Vec<Value> = nf
        .embed_f64(&nf.theta())
        .iter()
        .map(|&x| real(x, 4.0 * f64::EPSILON * x.abs().max(1.0)))
        .collect();
    let results = json!({
        "degree": g,
        "min_poly": nf.min_poly().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "discriminant": nf.discriminant().to_string(),
        "integral_basis": (0..g).map(|i| element(nf, &nf.basis_element(i))).collect::<Vec<_>>(),
        "embeddings_of_theta": emb,
        "units": {
            "delta_generators": ctx.gens().iter().map(|u| element(nf, u)).collect::<Vec<_>>(),
            "fundamental": ctx.units.fundamental.as_ref().map(|f| f.iter().map(|u| element(nf, u)).collect::<Vec<_>>()),
            "provenance": format!("{:?}", ctx.units.provenance),
        },
        "class_number": narrow.class_group_order(),
        "narrow_class_number": narrow.order(),
        "modulus": {
            "ideal": output::ideal(nf, &ctx.modulus),
            "ray_class_group_order": ray.order(),
            "invariants": ray.group.invariants,
            "characters": chars.iter().enumerate().map(|(i, c)| json!({
                "character": output::character(i, c),
                "primitive": c.is_primitive(&ray),
            })).collect::<Vec<_>>(),
        },
    });
    Ok(outcome("exact", results, Vec::new()))
}

fn decomposition(ctx: &Ctx) -> Result<ShintaniDecomposition> {
    let nf = &ctx.nf;
    let one = FractionalIdeal::unit(nf);
    if let Some(path) = &ctx.cfg.field.cones_file {
        let file = ConesFile::load(path)?;
        let cones = file
            .cones
            .iter()
            .map(|c| c.iter().map(|x| to_element(nf, x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        return from_user_cones(nf, &one, ctx.gens(), cones);
    }
    decompose(nf, &one, ctx.gens())
}

fn cones(ctx: &Ctx) -> Result<Outcome> {
    let nf = &ctx.nf;
    let dec = decomposition(ctx)?;
    let mut checks = Vec::new();
    let mut out = Vec::new();
    for (i, c) in dec.cones.iter().enumerate() {
        let closed = c.parallelepiped_points(false)?.len();
        let breve = c.parallelepiped_points(true)?.len();
        let index = c.index().abs();
        let ok = index == int(closed as i64) && index == int(breve as i64);
        checks.push(Check {
            name: format!("point count, cone {i}"),
            holds: ok,
            detail: json!({ "closed": closed, "breve": breve, "index": index.to_string() }),
        });
        out.push(json!({
            "generators": c.gens.iter().map(|x| element(nf, x)).collect::<Vec<_>>(),
            "sign": c.sign,
            "index": index.to_string(),
            "parallelepiped_points": closed,
            "breve_parallelepiped_points": breve,
        }));
    }
    let samples = ctx.cfg.task.samples.unwrap_or(200);
    let seed = ctx.cfg.task.seed.unwrap_or(1);
    let fd = match verify_fundamental_domain(nf, &dec, samples, seed) {
        Ok(()) => Check { name: "fundamental domain (sampled)".into(), holds: true, detail: json!({ "samples": samples }) },
        Err(Error::NotFundamentalDomain(m)) => {
            Check { name: "fundamental domain (sampled)".into(), holds: false, detail: json!({ "samples": samples, "message": m }) }
        }
        Err(e) => return Err(e),
    };
    checks.push(fd);
    let results = json!({
        "ideal": output::ideal(nf, &dec.ideal),
        "units": dec.units.iter().map(|u| element(nf, u)).collect::<Vec<_>>(),
        "cones": out,
    });
    Ok(outcome("exact", results, checks))
}

fn point_entry(nf: &NumberField, setup: &HeckeSetup, i: usize, values: Vec<Value>) -> Value {
    json!({
        "index": i,
        "narrow_class": setup.torsor.rep_class[i],
        "point": output::point(nf, &setup.torsor.reps[i]),
        "values": values,
    })
}

fn lerch_neg(ctx: &Ctx) -> Result<Outcome> {
    let nf = &ctx.nf;
    let setup = ctx.setup()?;
    let pts = ctx.cfg.task.points.pick(setup.torsor.len())?;
    let ks = &ctx.cfg.task.k;
    let work: Vec<(usize, u32)> = pts.iter().flat_map(|&i| ks.iter().map(move |&k| (i, k))).collect();
    let vals = par_map(ctx.jobs, &work, |&(i, k)| lerch_value(nf, &setup.torsor.reps[i], k, ctx.gens()));
    let mut it = vals.into_iter();
    let mut out = Vec::new();
    for &i in &pts {
        let mut vs = Vec::new();
        for &k in ks {
            let v = it.next().unwrap()?;
            vs.push(json!({ "k": k, "s": -(k as i64), "value": exact(&v) }));
        }
        out.push(point_entry(nf, &setup, i, vs));
    }
    Ok(outcome("exact", json!({ "points": out }), Vec::new()))
}

fn check_real_points(ss: &[f64]) -> Result<()> {
    if let Some(s) = ss.iter().find(|&&s| s <= 1.0) {
        return Err(Error::InvalidInput(format!("s = {s} is outside the region of absolute convergence")));
    }
    Ok(())
}

fn lerch_pos(ctx: &Ctx) -> Result<Outcome> {
    let nf = &ctx.nf;
    let setup = ctx.setup()?;
    let pts = ctx.cfg.task.points.pick(setup.torsor.len())?;
    let ss = &ctx.cfg.task.s;
    check_real_points(ss)?;
    let work: Vec<(usize, f64)> = pts.iter().flat_map(|&i| ss.iter().map(move |&s| (i, s))).collect();
    let vals = par_map(ctx.jobs, &work, |&(i, s)| lerch_series(nf, &setup.torsor.reps[i], s, ctx.gens()));
    let mut it = vals.into_iter();
    let mut out = Vec::new();
    for &i in &pts {
        let mut vs = Vec::new();
        for &s in ss {
            vs.push(json!({ "s": s, "value": approx(&it.next().unwrap()?) }));
        }
        out.push(point_entry(nf, &setup, i, vs));
    }
    Ok(outcome("numeric", json!({ "points": out }), Vec::new()))
}

fn selected_chars<'a>(ctx: &Ctx, setup: &'a HeckeSetup) -> Result<Vec<(usize, &'a shintani_core::arithmetic_data::HeckeCharacter)>> {
    let prim: Vec<(usize, _)> = setup.chars.iter().enumerate().filter(|(_, c)| c.is_primitive(&setup.grp)).collect();
    let sel = ctx.cfg.task.characters.pick(prim.len())?;
    Ok(sel.into_iter().map(|i| prim[i]).collect())
}

fn gauss(ctx: &Ctx) -> Result<Outcome> {
    let nf = &ctx.nf;
    let setup = ctx.setup()?;
    let pts = ctx.cfg.task.points.pick(setup.torsor.len())?;
    let chars = selected_chars(ctx, &setup)?;
    let work: Vec<(usize, usize)> = chars.iter().flat_map(|&(c, _)| pts.iter().map(move |&p| (c, p))).collect();
    let vals = par_map(ctx.jobs, &work, |&(c, p)| -> Result<(Value, Check)> {
        let psi = &setup.chars[c];
        let eta = &setup.torsor.reps[p];
        let g = gauss_sum_at(nf, &setup.grp, psi, eta)?;
        let r = gauss_product_check(nf, &setup, psi, eta)?;
        let check = Check { name: format!("gauss product, character {c}, point {p}"), holds: r.exact, detail: output::report(&r, 0.0) };
        Ok((json!({ "point": p, "gauss_sum": exact(&g) }), check))
    });
    let mut it = vals.into_iter();
    let mut out = Vec::new();
    let mut checks = Vec::new();
    for &(c, psi) in &chars {
        let mut sums = Vec::new();
        for _ in &pts {
            let (v, ch) = it.next().unwrap()?;
            sums.push(v);
            checks.push(ch);
        }
        out.push(json!({ "character": output::character(c, psi), "sums": sums }));
    }
    Ok(outcome("exact", json!({ "modulus_norm": setup.norm().to_string(), "characters": out }), checks))
}

fn hecke(ctx: &Ctx) -> Result<Outcome> {
    let nf = &ctx.nf;
    let setup = ctx.setup()?;
    let chars = selected_chars(ctx, &setup)?;
    let reps: Vec<usize> = (0..setup.torsor.len()).collect();
    let mut per_char: Vec<Vec<Value>> = vec![Vec::new(); chars.len()];
    let mut checks = Vec::new();
    for &k in &ctx.cfg.task.k {
        let table = par_map(ctx.jobs, &reps, |&i| lerch_value(nf, &setup.torsor.reps[i], k, ctx.gens()))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        for (j, &(_, psi)) in chars.iter().enumerate() {
            let v = hecke_from_lerch_exact(nf, &setup, psi, 0, &table)?;
            per_char[j].push(json!({ "s": -(k as i64), "value": exact(&v), "provenance": "exact" }));
        }
    }
    check_real_points(&ctx.cfg.task.s)?;
    for &s in &ctx.cfg.task.s {
        let table = par_map(ctx.jobs, &reps, |&i| lerch_series(nf, &setup.torsor.reps[i], s, ctx.gens()))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        for (j, &(c, psi)) in chars.iter().enumerate() {
            let a = hecke_from_lerch_numeric(nf, &setup, psi, 0, &table)?;
            let b = euler_product(nf, &setup.grp, psi, s, ctx.prime_bound)?;
            let rel = (a.value - b.value).norm() / b.value.norm().max(f64::MIN_POSITIVE);
            let holds = rel <= ctx.tolerance;
            checks.push(Check {
                name: format!("Lerch assembly vs Euler product, character {c}, s = {s}"),
                holds,
                detail: json!({ "lerch": approx(&a), "euler": approx(&b), "rel_err": rel, "tolerance": ctx.tolerance }),
            });
            per_char[j].push(json!({ "s": s, "value": approx(&a), "euler_product": approx(&b), "provenance": "numeric" }));
        }
    }
    let out: Vec<Value> = chars
        .iter()
        .zip(per_char)
        .map(|(&(c, psi), vals)| json!({ "character": output::character(c, psi), "values": vals }))
        .collect();
    let prov = if ctx.cfg.task.s.is_empty() { "exact" } else if ctx.cfg.task.k.is_empty() { "numeric" } else { "mixed" };
    Ok(outcome(prov, json!({ "characters": out }), checks))
}

fn funeq(ctx: &Ctx) -> Result<Outcome> {
    let nf = &ctx.nf;
    let setup = ctx.setup()?;
    let chars = selected_chars(ctx, &setup)?;
    let g = nf.degree();
    let mut out = Vec::new();
    let mut checks = Vec::new();
    for &(c, psi) in &chars {
        let mut vals = Vec::new();
        for &k in &ctx.cfg.task.k {
            if k < 2 || !is_critical(psi, k as i64, g) {
                vals.push(json!({ "k": k, "critical": false }));
                continue;
            }
            let r = functional_equation_check(nf, &setup, psi, k, ctx.prime_bound)?;
            let rep = output::report(&r, ctx.tolerance);
            checks.push(Check { name: format!("functional equation, character {c}, k = {k}"), holds: r.holds(ctx.tolerance), detail: rep.clone() });
            vals.push(json!({ "k": k, "critical": true, "report": rep }));
        }
        out.push(json!({ "character": output::character(c, psi), "points": vals }));
    }
    Ok(outcome("mixed", json!({ "characters": out }), checks))
}

fn imprimitive(ctx: &Ctx) -> Result<Outcome> {
    let nf = &ctx.nf;
    let gens = ctx.cfg.task.prime.as_ref().ok_or_else(|| Error::InvalidInput("task.prime is required".into()))?;
    let prime = build_ideal(nf, gens)?;
    let p = prime.min_integer(nf).to_u64().ok_or_else(|| Error::InvalidInput("prime ideal is too large".into()))?;
    if p < 2 || !primes_above(nf, p).iter().any(|(q, _)| *q == prime) {
        return Err(Error::InvalidInput("task.prime does not generate a prime ideal".into()));
    }
    let grp0 = RayClassGroup::new(nf, &ctx.units, &ctx.modulus)?;
    let chars = characters(nf, &grp0)?;
    let sel = ctx.cfg.task.characters.pick(chars.len())?;
    let xi1 = xi_can(nf, &prime.multiply(nf, &ctx.modulus))?;
    check_real_points(&ctx.cfg.task.s)?;
    let mut at: Vec<Point> = ctx.cfg.task.k.iter().map(|&k| Point::NonPositive(k)).collect();
    at.extend(ctx.cfg.task.s.iter().map(|&s| Point::Real(s)));
    let work: Vec<(usize, Point)> = sel.iter().flat_map(|&c| at.iter().map(move |&a| (c, a))).collect();
    let reps = par_map(ctx.jobs, &work, |&(c, a)| imprimitive_check(nf, &ctx.units, &grp0, &chars[c], &prime, &xi1, a));
    let mut out = Vec::new();
    let mut checks = Vec::new();
    for ((c, a), r) in work.iter().zip(reps) {
        let r = r?;
        let (label, tol) = match a {
            Point::NonPositive(k) => (format!("s = -{k}"), 0.0),
            Point::Real(s) => (format!("s = {s}"), ctx.tolerance),
        };
        let rep = output::report(&r, tol);
        checks.push(Check { name: format!("imprimitivity, character {c}, {label}"), holds: r.holds(tol), detail: rep.clone() });
        out.push(json!({ "character": output::character(*c, &chars[*c]), "at": label, "report": rep }));
    }
    let results = json!({
        "prime": output::ideal(nf, &prime),
        "divides_modulus": ctx.modulus.is_subset(&prime),
        "point": output::point(nf, &xi1),
        "checks": out,
    });
    Ok(outcome("mixed", results, checks))
}

fn log_table_json(t: &LogTable) -> Value {
    json!({
        "g": t.g,
        "N": t.n,
        "h_plus": t.h_plus,
        "rows": t.rows.iter().map(|r| json!({
            "m": r.m,
            "dim": r.dim,
            "twist": r.twist,
            "split": r.split.map(|(a, b)| json!({ "r_minus_g": a, "tate_tower": b })),
        })).collect::<Vec<_>>(),
        "deligne_top": t.deligne,
        "plectic_fiber": t.plectic_fiber,
    })
}

fn cohomology(ctx: &Ctx) -> Result<Outcome> {
    let nf = &ctx.nf;
    let g = nf.degree();
    let kmax = ctx.cfg.task.k_max.unwrap_or(12);
    let ks: Vec<usize> = (0..=kmax).collect();
    let dims = par_map(ctx.jobs, &ks, |&k| sym_tate_dims(nf, ctx.gens(), k));
    let mut sym = Vec::new();
    let mut checks = Vec::new();
    let mut csv = String::from("table,g,N,k,m,dim,predicted\n");
    for (k, d) in ks.iter().zip(dims) {
        let d = d?;
        for (m, (a, b)) in d.computed.iter().zip(&d.predicted).enumerate() {
            csv.push_str(&format!("sym_tate,{g},,{k},{m},{a},{b}\n"));
        }
        checks.push(Check {
            name: format!("Sym^{k} cohomology matches the closed form"),
            holds: d.computed == d.predicted,
            detail: json!({ "computed": d.computed, "predicted": d.predicted }),
        });
        sym.push(json!({ "k": k, "computed": d.computed, "predicted": d.predicted }));
    }
    let ns = if ctx.cfg.task.log_n.is_empty() { vec![g, 2 * g] } else { ctx.cfg.task.log_n.clone() };
    let mut tables = Vec::new();
    for n in ns {
        let t = log_cohomology_for_field(nf, &ctx.units, n, ctx.cfg.task.assume_plectic)?;
        for r in &t.rows {
            csv.push_str(&format!("log,{g},{n},,{},{},\n", r.m, r.dim));
        }
        tables.push(log_table_json(&t));
    }
    let results = json!({
        "sym_tate": sym,
        "log_tables": tables,
        "assumes_plectic_hypotheses": ctx.cfg.task.assume_plectic,
    });
    Ok(Outcome { provenance: "exact", results, checks, csv: Some(csv) })
}

fn ler(ctx: &Ctx) -> Result<Outcome> {
    let nf = &ctx.nf;
    let setup = ctx.setup()?;
    let ns = &ctx.cfg.task.n;
    let vecs = par_map(ctx.jobs, ns, |&n| ler_vector(nf, &setup, n));
    let mut out = Vec::new();
    let mut checks = Vec::new();
    for (&n, v) in ns.iter().zip(vecs) {
        let v = v?;
        let worst = v.iter().map(|a| a.value.im.abs()).fold(0.0, f64::max);
        checks.push(Check { name: format!("reality, n = {n}"), holds: worst <= 1e-10, detail: json!({ "max_abs_imag": worst, "bound": 1e-10 }) });
        let entries: Vec<Value> = v
            .iter()
            .enumerate()
            .map(|(i, a)| json!({ "point": i, "value": real(a.value.re, a.err), "imag": a.value.im }))
            .collect();
        out.push(json!({ "n": n, "vector": entries }));
    }
    let results = json!({
        "normalization": "d_F^{1/2} L^inf(η, n) / (2πi)^{(n-1)g}",
        "points": setup.torsor.reps.iter().map(|p| output::point(nf, p)).collect::<Vec<_>>(),
        "vectors": out,
    });
    Ok(outcome("numeric", results, checks))
}

fn quad(c: &[i64]) -> Result<NumberField> {
    NumberField::new(&c.iter().map(|&x| int(x)).collect::<Vec<_>>(), None)
}

fn principal(nf: &NumberField, n: i64) -> Result<FractionalIdeal> {
    FractionalIdeal::principal(nf, &nf.from_int(n))
}

/// A fixed desk-scale suite across the modules.
fn verify_all(jobs: usize) -> Result<Outcome> {
    type Job = fn() -> Result<Check>;
    let jobs_list: Vec<(&str, Job)> = vec![
        ("zeta_Q(-1) = -1/12", || {
            let q = NumberField::rationals();
            let v = trivial_value(&q, 1, &[])?;
            Ok(Check { name: String::new(), holds: v == rat(-1, 12), detail: json!(v.to_string()) })
        }),
        ("zeta_Q(sqrt5)(-1) = 1/30", || {
            let f = quad(&[-1, -1, 1])?;
            let u = units_plus(&f)?;
            let v = trivial_value(&f, 1, &u.generators)?;
            Ok(Check { name: String::new(), holds: v == rat(1, 30), detail: json!(v.to_string()) })
        }),
        ("zeta_Q(sqrt2)(-1) = 1/12", || {
            let f = quad(&[-2, 0, 1])?;
            let u = units_plus(&f)?;
            let v = trivial_value(&f, 1, &u.generators)?;
            Ok(Check { name: String::new(), holds: v == rat(1, 12), detail: json!(v.to_string()) })
        }),
        ("Gauss product identity over Q(sqrt5) mod 4", || {
            let f = quad(&[-1, -1, 1])?;
            let u = units_plus(&f)?;
            let s = HeckeSetup::new(&f, &u, &principal(&f, 4)?)?;
            let mut ok = true;
            for psi in s.primitive_chars() {
                for eta in &s.torsor.reps {
                    ok &= gauss_product_check(&f, &s, psi, eta)?.exact;
                }
            }
            Ok(Check { name: String::new(), holds: ok, detail: json!({ "characters": s.primitive_chars().len() }) })
        }),
        ("functional equation for zeta_Q at k = 2", || {
            let q = NumberField::rationals();
            let u = units_plus(&q)?;
            let s = HeckeSetup::new(&q, &u, &FractionalIdeal::unit(&q))?;
            let r = functional_equation_check(&q, &s, &s.chars[0], 2, 100_000)?;
            Ok(Check { name: String::new(), holds: r.holds(1e-6), detail: output::report(&r, 1e-6) })
        }),
        ("imprimitivity over Q, g0 = (3), p = (5), s = -1", || {
            let q = NumberField::rationals();
            let u = units_plus(&q)?;
            let g0 = principal(&q, 3)?;
            let grp0 = RayClassGroup::new(&q, &u, &g0)?;
            let p = principal(&q, 5)?;
            let xi1 = xi_can(&q, &p.multiply(&q, &g0))?;
            let mut ok = true;
            for psi in characters(&q, &grp0)? {
                ok &= imprimitive_check(&q, &u, &grp0, &psi, &p, &xi1, Point::NonPositive(1))?.exact;
            }
            Ok(Check { name: String::new(), holds: ok, detail: Value::Null })
        }),
        ("cocycle relation over Q(sqrt5)", || {
            let f = quad(&[-1, -1, 1])?;
            let one = FractionalIdeal::unit(&f);
            let mut rng = SampleRng::new(7);
            let mut ok = true;
            let mut tested = 0;
            while tested < 10 {
                let t: [FieldElement; 3] = core::array::from_fn(|_| {
                    shintani_core::shintani_values::primitive_part(&one, &shintani_core::shintani_cones::random_positive(&f, &one, &mut rng, 6))
                });
                let pts: Vec<Vec<Rat>> = (0..5).map(|_| (0..2).map(|_| rat(rng.range(-9, 9), rng.range(1, 7))).collect()).collect();
                match cocycle_check(&f, &one, &t, &pts) {
                    Ok(b) => {
                        ok &= b;
                        tested += 1;
                    }
                    Err(Error::PoleAtTestPoint) | Err(Error::DegenerateCone) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(Check { name: String::new(), holds: ok, detail: json!({ "triples": tested }) })
        }),
        ("parallelepiped point counts over Q(sqrt2)", || {
            let f = quad(&[-2, 0, 1])?;
            let one = FractionalIdeal::unit(&f);
            let mut rng = SampleRng::new(11);
            let mut ok = true;
            for _ in 0..20 {
                let c = random_cone(&f, &one, &mut rng, 5);
                let a = c.parallelepiped_points(false)?.len() as i64;
                let b = c.parallelepiped_points(true)?.len() as i64;
                ok &= c.index().abs() == int(a) && a == b;
            }
            Ok(Check { name: String::new(), holds: ok, detail: json!({ "cones": 20 }) })
        }),
        ("fundamental domain over Q(sqrt3)", || {
            let f = quad(&[-3, 0, 1])?;
            let u = units_plus(&f)?;
            let dec = decompose(&f, &FractionalIdeal::unit(&f), &u.generators)?;
            let r = verify_fundamental_domain(&f, &dec, 100, 3);
            Ok(Check { name: String::new(), holds: r.is_ok(), detail: json!({ "samples": 100 }) })
        }),
        ("Sym^k cohomology over Q(sqrt5), k <= 6", || {
            let f = quad(&[-1, -1, 1])?;
            let u = units_plus(&f)?;
            let mut ok = true;
            for k in 0..=6 {
                let d = sym_tate_dims(&f, &u.generators, k)?;
                ok &= d.computed == d.predicted;
            }
            Ok(Check { name: String::new(), holds: ok, detail: Value::Null })
        }),
        ("torsor and involution over Q mod 5", || {
            let q = NumberField::rationals();
            let u = units_plus(&q)?;
            let s = HeckeSetup::new(&q, &u, &principal(&q, 5)?)?;
            let mut ok = s.torsor.is_torsor() && s.torsor.len() == 4;
            for i in 0..s.torsor.len() {
                ok &= s.torsor.involution_check(&q, &s.grp, i)?;
            }
            Ok(Check { name: String::new(), holds: ok, detail: Value::Null })
        }),
    ];
    let results = par_map(jobs, &jobs_list, |(name, job)| {
        let mut c = job().unwrap_or_else(|e| Check { name: String::new(), holds: false, detail: json!({ "error": e.to_string() }) });
        c.name = name.to_string();
        c
    });
    let summary: Vec<Value> = results.iter().map(|c| json!({ "name": c.name, "holds": c.holds })).collect();
    Ok(outcome("mixed", json!({ "suite": summary }), results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_preserves_order() {
        let v: Vec<u64> = (0..37).collect();
        assert_eq!(par_map(4, &v, |x| x * x), v.iter().map(|x| x * x).collect::<Vec<_>>());
        assert_eq!(par_map(1, &v, |x| x + 1)[36], 37);
    }

    #[test]
    fn tasks_have_kebab_names() {
        assert_eq!(Task::LerVector.name(), "ler-vector");
        assert_eq!(Task::VerifyAll.name(), "verify-all");
    }

    #[test]
    fn defaults_are_filled() {
        let mut cfg = JobConfig::default();
        resolve_defaults(Task::LerVector, &mut cfg);
        assert_eq!(cfg.task.n, vec![2, 3]);
        let mut cfg = JobConfig::default();
        cfg.task.s = vec![2.5];
        resolve_defaults(Task::Hecke, &mut cfg);
        assert!(cfg.task.k.is_empty());
    }
}
