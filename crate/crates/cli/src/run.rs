//! Dispatch of a [`JobSpec`] to the library and the [`ResultDoc`] it produces.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use singclass::charclass::{
    chi_at_point, csm_projective_hypersurface, graph_limit_cycle, lagrangian_specialisation, mu_total_oracle,
    mu_total_via_z, segre_class, segre_class_fibre,
};
use singclass::constructible::check_euler_relation;
use singclass::ideal::take_gb_stats;
use singclass::poly::parse_rational;
use singclass::singlocal::{
    check_no_blowup_codim0, le_greuel_icis, milnor_number_hypersurface, relative_conormal_ideal, GermMap,
};
use singclass::{Error, Genericity, Ideal, MonomialOrder, Poly, PolyRing, Rational};

use crate::job::{Command, JobSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// A computed check (conservation, positivity, Euler relation, …) came out false.
    CheckFailed,
    InputError,
    PreconditionFailed,
    GenericityExhausted,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 1,
            Status::PreconditionFailed | Status::CheckFailed => 2,
            Status::GenericityExhausted => 3,
        }
    }

    fn of(e: &Error) -> Status {
        if e.is_input_error() {
            Status::InputError
        } else if e.is_genericity_failure() {
            Status::GenericityExhausted
        } else {
            Status::PreconditionFailed
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub seed: u64,
    pub retries: u32,
    pub field_prescreen: bool,
    pub genericity_draws: u64,
    pub genericity_redraws: u64,
    pub groebner_bases: u64,
    pub groebner_pairs: u64,
    pub groebner_zero_reductions: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub command: String,
    pub inputs: JobSpec,
    pub outputs: Value,
    pub diagnostics: Diagnostics,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Command-line settings that override the job file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub retries: Option<u32>,
    pub prescreen: bool,
    pub timings: bool,
}

enum Failure {
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<(Value, bool), Failure>;

fn rat(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|_| Failure::Input(format!("invalid rational `{s}`")))
}

fn point(p: &[String]) -> Result<Vec<Rational>, Failure> {
    p.iter().map(|s| rat(s)).collect()
}

fn show(p: &[Rational]) -> Vec<String> {
    p.iter().map(|r| r.to_string()).collect()
}

struct Ctx<'a> {
    job: &'a JobSpec,
    ring: Arc<PolyRing>,
    gen: &'a Genericity,
}

impl Ctx<'_> {
    fn polys(&self, src: &[String]) -> Result<Vec<Poly>, Failure> {
        Ok(src.iter().map(|s| Poly::parse(s, &self.ring)).collect::<singclass::Result<_>>()?)
    }

    fn map(&self) -> Result<Vec<Poly>, Failure> {
        self.polys(&self.job.map)
    }

    fn germ(&self) -> Result<GermMap, Failure> {
        Ok(GermMap::at_origin(self.map()?)?)
    }

    fn points(&self) -> Result<Vec<Vec<Rational>>, Failure> {
        let pts: Vec<Vec<Rational>> = self.job.points.iter().map(|p| point(p)).collect::<Result<_, _>>()?;
        if let Some(p) = pts.iter().find(|p| p.len() != self.ring.nvars()) {
            return Err(Failure::Lib(Error::ArityMismatch(self.ring.nvars(), p.len())));
        }
        Ok(pts)
    }

    fn single(&self) -> Result<Poly, Failure> {
        Ok(self.map()?.remove(0))
    }
}

fn milnor(c: &Ctx) -> Out {
    let map = c.map()?;
    let mut values = Vec::new();
    for p in c.points()? {
        let germ = GermMap::new(map.clone(), Some(p.clone()))?;
        let mu = if germ.target_dim() == 1 {
            milnor_number_hypersurface(&germ.components()[0])?
        } else {
            le_greuel_icis(&germ)?
        };
        values.push(json!({"point": show(&p), "mu": mu}));
    }
    Ok((json!({ "values": values }), true))
}

fn chi(c: &Ctx) -> Out {
    let germ = c.germ()?;
    let mut values = Vec::new();
    for p in c.points()? {
        values.push(json!({"point": show(&p), "chi": chi_at_point(&germ, &p, c.gen)?}));
    }
    Ok((json!({ "values": values }), true))
}

fn verify_euler(c: &Ctx) -> Out {
    let germ = c.germ()?;
    let rep = check_euler_relation(&germ, &c.points()?, c.gen, c.job.experimental)?;
    let values: Vec<Value> = rep
        .points
        .iter()
        .map(|p| json!({"point": show(&p.point), "chi": p.chi, "mu": p.mu, "pass": p.pass}))
        .collect();
    Ok((json!({"m": rep.m, "n": rep.n, "values": values, "pass": rep.pass}), rep.pass))
}

fn csm(c: &Ctx) -> Out {
    let r = csm_projective_hypersurface(&c.single()?)?;
    let out = json!({
        "m": r.m,
        "degree": r.degree,
        "graph": r.graph,
        "x_prime": r.x_prime,
        "y_prime": r.y_prime,
        "csm_1x": r.one_x,
        "csm_chi_prime": r.chi_prime,
        "csm_mu": r.mu,
        "euler_characteristic": r.euler_characteristic(),
        "positive": r.positive,
    });
    Ok((out, r.positive))
}

fn limit_cycle(c: &Ctx) -> Out {
    let g = graph_limit_cycle(&c.single()?, c.gen)?;
    let ok = g.is_conserved();
    let out = json!({
        "dominant": g.dominant.coefficients,
        "residual": g.residual.coefficients,
        "total": g.total.coefficients,
        "conserved": ok,
    });
    Ok((out, ok))
}

fn lagrangian(c: &Ctx) -> Out {
    let f = c.single()?;
    let l = lagrangian_specialisation(&f, c.gen)?;
    let g = graph_limit_cycle(&f, c.gen)?;
    let ok = l.cone_part.coefficients == g.residual.coefficients;
    let out = json!({
        "cone_part": l.cone_part.coefficients,
        "cylinder_part": l.cylinder_part.coefficients,
        "residual": g.residual.coefficients,
        "agrees": ok,
    });
    Ok((out, ok))
}

fn conormal(c: &Ctx) -> Out {
    let germ = c.germ()?;
    let con = relative_conormal_ideal(&germ)?;
    let expected = (germ.source_dim() + germ.target_dim()) as i64;
    let dim = con.dimension();
    let gens: Vec<String> = con.ideal.gens().iter().map(|g| g.to_string()).collect();
    let vars: Vec<&String> = con.ring.vars().iter().collect();
    Ok((json!({"ring": vars, "generators": gens, "dimension": dim, "expected_dimension": expected}), dim == expected))
}

fn check_nbl(c: &Ctx) -> Out {
    let map = c.map()?;
    let base = match c.job.points.first() {
        Some(p) => Some(point(p)?),
        None => None,
    };
    let germ = GermMap::new(map, base)?;
    let samples: Vec<Vec<Rational>> = c.job.samples.iter().map(|p| point(p)).collect::<Result<_, _>>()?;
    let rep = check_no_blowup_codim0(&germ, &samples)?;
    let dims: Vec<Value> =
        rep.fibre_dimensions.iter().map(|(w, d)| json!({"value": show(w), "dimension": d})).collect();
    Ok((json!({"fibre_dimensions": dims, "pass": rep.pass}), rep.pass))
}

fn mu_total(c: &Ctx) -> Out {
    let germ = c.germ()?;
    let via_z = mu_total_via_z(&germ, c.gen)?;
    let oracle = mu_total_oracle(&germ)?;
    let ok = via_z == oracle as i64;
    Ok((json!({"via_z": via_z, "oracle": oracle, "agree": ok}), ok))
}

fn segre(c: &Ctx) -> Out {
    let m = c.job.affine.unwrap_or(0);
    let b = Ideal::new(&c.ring, c.polys(&c.job.ideal)?)?;
    let s = if c.job.cut.is_empty() {
        let z = point(&c.job.points[0])?;
        segre_class_fibre(&b, m, &z, c.gen)?
    } else {
        segre_class(&b, m, &c.polys(&c.job.cut)?, c.gen)?
    };
    Ok((json!({"n_proj": s.n_proj, "coefficients": s.coefficients, "dual_quotient_integral": s.dual_quotient_integral()}), true))
}

fn lookup<'a>(v: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(v, |cur, key| match cur {
        Value::Array(items) => items.get(key.parse::<usize>().ok()?),
        Value::Object(map) => map.get(key),
        _ => None,
    })
}

/// First expectation of the job that the outputs do not meet.
fn unmet(outputs: &Value, job: &JobSpec) -> Option<String> {
    job.expect.iter().find_map(|(path, want)| {
        let got = lookup(outputs, path);
        (got != Some(want)).then(|| match got {
            Some(g) => format!("expected {path} = {want}, got {g}"),
            None => format!("expected {path} = {want}, but it is missing"),
        })
    })
}

/// Runs one job. Never panics on bad input; failures are reported in the status.
pub fn run_job(job: &JobSpec, ov: &Overrides) -> ResultDoc {
    let mut inputs = job.clone();
    if let Some(s) = ov.seed {
        inputs.options.seed = Some(s);
    }
    if let Some(r) = ov.retries {
        inputs.options.retries = r;
    }
    inputs.options.field_prescreen |= ov.prescreen;
    let seed = inputs.seed();
    let gen = Genericity::new(seed).with_retries(inputs.options.retries).with_prescreen(inputs.options.field_prescreen);

    take_gb_stats();
    let start = Instant::now();
    let result = match PolyRing::new(&inputs.ring, MonomialOrder::GrevLex) {
        Err(e) => Err(Failure::Lib(e)),
        Ok(ring) => {
            let c = Ctx { job: &inputs, ring, gen: &gen };
            match inputs.command {
                Command::Milnor => milnor(&c),
                Command::Chi => chi(&c),
                Command::Csm => csm(&c),
                Command::LimitCycle => limit_cycle(&c),
                Command::Lagrangian => lagrangian(&c),
                Command::Conormal => conormal(&c),
                Command::CheckNbl => check_nbl(&c),
                Command::MuTotal => mu_total(&c),
                Command::VerifyEuler => verify_euler(&c),
                Command::Segre => segre(&c),
            }
        }
    };
    let elapsed = start.elapsed();
    let stats = take_gb_stats();
    let (outputs, status, error) = match result {
        Ok((v, ok)) => match unmet(&v, &inputs) {
            Some(msg) => (v, Status::CheckFailed, Some(msg)),
            None if ok => (v, Status::Ok, None),
            None => (v, Status::CheckFailed, None),
        },
        Err(Failure::Input(msg)) => (json!({}), Status::InputError, Some(msg)),
        Err(Failure::Lib(e)) => (json!({}), Status::of(&e), Some(e.to_string())),
    };
    let diagnostics = Diagnostics {
        seed,
        retries: inputs.options.retries,
        field_prescreen: inputs.options.field_prescreen,
        genericity_draws: gen.draws_used(),
        genericity_redraws: gen.redraws(),
        groebner_bases: stats.bases,
        groebner_pairs: stats.pairs,
        groebner_zero_reductions: stats.zero_reductions,
        elapsed_ms: ov.timings.then(|| elapsed.as_millis() as u64),
    };
    ResultDoc { command: inputs.command.name().to_string(), inputs, outputs, diagnostics, status, error }
}
