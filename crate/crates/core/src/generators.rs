//! Named fixture generators, looked up at runtime by the CLI and the sweep
//! harness.
//!
//! A generator is selected with a spec of the form `name` or `name:param`,
//! e.g. `single-term-m:3`. Built-ins:
//!
//! | name            | produces                                                       |
//! |-----------------|----------------------------------------------------------------|
//! | `random`        | uniformly random function                                      |
//! | `random-junta`  | uniformly random function of every variable except the target  |
//! | `affine-random` | random affine function                                         |
//! | `single-term-m` | one product term of `param` variables (default: all `n`)       |
//! | `majority`      | 1 iff more than half of the inputs are 1                       |
//!
//! When a target variable is given, every generator except `random-junta`
//! makes it relevant; `random-junta` makes it irrelevant.

use crate::boolfn::{AnfFunction, AnfTerm, TruthTable, VarIndex, MAX_TABLE_ARITY};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use std::fmt;
use std::str::FromStr;

/// What to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenRequest {
    pub arity: usize,
    pub target: Option<VarIndex>,
    pub param: Option<usize>,
}

pub trait FunctionGenerator: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn generate(&self, req: &GenRequest, rng: &mut dyn RngCore) -> Result<AnfFunction>;
}

/// `name[:param]` as typed on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub param: Option<usize>,
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((name, p)) => {
                let param = p.parse().map_err(|_| {
                    Error::parse(name.len() + 2, format!("invalid generator parameter `{p}`"))
                })?;
                (name, Some(param))
            }
            None => (s, None),
        };
        if name.is_empty() {
            return Err(Error::parse(1, "empty generator name"));
        }
        Ok(GeneratorSpec {
            name: name.to_string(),
            param,
        })
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param {
            Some(p) => write!(f, "{}:{p}", self.name),
            None => f.write_str(&self.name),
        }
    }
}

pub struct GeneratorRegistry {
    entries: Vec<Box<dyn FunctionGenerator>>,
}

impl GeneratorRegistry {
    pub fn empty() -> Self {
        GeneratorRegistry {
            entries: Vec::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(RandomFunction));
        r.register(Box::new(RandomJunta));
        r.register(Box::new(AffineRandom));
        r.register(Box::new(SingleTerm));
        r.register(Box::new(Majority));
        r
    }

    /// Adds a generator, replacing any previous one of the same name.
    pub fn register(&mut self, generator: Box<dyn FunctionGenerator>) {
        self.entries.retain(|g| g.name() != generator.name());
        self.entries.push(generator);
    }

    pub fn get(&self, name: &str) -> Result<&dyn FunctionGenerator> {
        self.entries
            .iter()
            .find(|g| g.name() == name)
            .map(|g| g.as_ref())
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|g| g.name())
    }

    pub fn generate(
        &self,
        spec: &GeneratorSpec,
        arity: usize,
        target: Option<VarIndex>,
        rng: &mut dyn RngCore,
    ) -> Result<AnfFunction> {
        if let Some(t) = target {
            t.check(arity)?;
        }
        let req = GenRequest {
            arity,
            target,
            param: spec.param,
        };
        self.get(&spec.name)?.generate(&req, rng)
    }
}

impl Default for GeneratorRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

fn random_table(arity: usize, rng: &mut dyn RngCore) -> Result<TruthTable> {
    TruthTable::from_fn(arity, |_| rng.gen())
}

fn no_param(req: &GenRequest, name: &str) -> Result<()> {
    match req.param {
        Some(_) => Err(Error::InvalidRequest(format!(
            "`{name}` takes no parameter"
        ))),
        None => Ok(()),
    }
}

struct RandomFunction;

impl FunctionGenerator for RandomFunction {
    fn name(&self) -> &'static str {
        "random"
    }

    fn description(&self) -> &'static str {
        "uniformly random function; the target variable, if any, is relevant"
    }

    fn generate(&self, req: &GenRequest, rng: &mut dyn RngCore) -> Result<AnfFunction> {
        no_param(req, self.name())?;
        if req.arity > MAX_TABLE_ARITY {
            return Err(Error::Capacity {
                arity: req.arity,
                cap: MAX_TABLE_ARITY,
                what: "truth tables",
            });
        }
        loop {
            let f = AnfFunction::from_truth_table(&random_table(req.arity, rng)?);
            match req.target {
                Some(t) if f.derive_g(t)?.is_zero() => continue,
                _ => return Ok(f),
            }
        }
    }
}

struct RandomJunta;

impl FunctionGenerator for RandomJunta {
    fn name(&self) -> &'static str {
        "random-junta"
    }

    fn description(&self) -> &'static str {
        "uniformly random function of all variables but the (required) target"
    }

    fn generate(&self, req: &GenRequest, rng: &mut dyn RngCore) -> Result<AnfFunction> {
        no_param(req, self.name())?;
        let target = req.target.ok_or_else(|| {
            Error::InvalidRequest("`random-junta` needs a target variable".into())
        })?;
        AnfFunction::from_truth_table(&random_table(req.arity, rng)?).without_variable(target)
    }
}

struct AffineRandom;

impl FunctionGenerator for AffineRandom {
    fn name(&self) -> &'static str {
        "affine-random"
    }

    fn description(&self) -> &'static str {
        "random affine function c0 x0 ^ .. ^ c(n-1) x(n-1) ^ cn"
    }

    fn generate(&self, req: &GenRequest, rng: &mut dyn RngCore) -> Result<AnfFunction> {
        no_param(req, self.name())?;
        let mut f = AnfFunction::zero(req.arity)?;
        for j in 0..req.arity {
            let forced = req.target == Some(VarIndex::new(j));
            if forced | rng.gen::<bool>() {
                f.toggle(AnfTerm::from_vars([j]))?;
            }
        }
        if rng.gen() {
            f.toggle(AnfTerm::ONE)?;
        }
        Ok(f)
    }
}

struct SingleTerm;

impl FunctionGenerator for SingleTerm {
    fn name(&self) -> &'static str {
        "single-term-m"
    }

    fn description(&self) -> &'static str {
        "a single product term of `param` variables (default n), containing the target"
    }

    fn generate(&self, req: &GenRequest, rng: &mut dyn RngCore) -> Result<AnfFunction> {
        let width = req.param.unwrap_or(req.arity);
        if width == 0 || width > req.arity {
            return Err(Error::InvalidRequest(format!(
                "term width {width} outside 1..={}",
                req.arity
            )));
        }
        let mut pool: Vec<usize> = (0..req.arity)
            .filter(|&j| Some(VarIndex::new(j)) != req.target)
            .collect();
        pool.shuffle(rng);
        let mut vars: Vec<usize> = req.target.map(VarIndex::get).into_iter().collect();
        vars.extend(pool.into_iter().take(width - vars.len()));
        AnfFunction::from_terms(req.arity, [AnfTerm::from_vars(vars)])
    }
}

struct Majority;

impl FunctionGenerator for Majority {
    fn name(&self) -> &'static str {
        "majority"
    }

    fn description(&self) -> &'static str {
        "1 iff more than half of the inputs are 1"
    }

    fn generate(&self, req: &GenRequest, _rng: &mut dyn RngCore) -> Result<AnfFunction> {
        no_param(req, self.name())?;
        let n = req.arity as u32;
        let table = TruthTable::from_fn(req.arity, |x| 2 * x.count_ones() > n)?;
        Ok(AnfFunction::from_truth_table(&table))
    }
}
