//! Multi-instance genetic algorithm over fixed-length discrete genomes.
//!
//! `s` instances evolve independent populations for `m` generations per
//! round. After each round the top `k` genomes of every instance are pooled;
//! each instance restarts from `pop_size/2` uniform draws from that pool
//! plus fresh random genomes. Rounds continue until the best loss has failed
//! to improve by more than `convergence_epsilon` for `retry_rounds + 1`
//! consecutive rounds.
//!
//! Every genome of a round is scored with the same evaluation seed (common
//! random numbers). The incumbent is re-scored each round and a round only
//! counts as an improvement if it beats both that re-scored value and the
//! previously recorded best, so the recorded best never increases.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::{mix, stream, DOMAIN_GA};

/// Fixed-length vector of genes in `0..gene_values`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genome {
    pub genes: Vec<u8>,
}

impl Genome {
    pub fn new(genes: Vec<u8>) -> Self {
        Genome { genes }
    }

    pub fn random(len: usize, gene_values: u8, rng: &mut impl Rng) -> Self {
        Genome { genes: (0..len).map(|_| rng.random_range(0..gene_values)).collect() }
    }
}

impl fmt::Display for Genome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.genes {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GAConfig {
    /// Number of instances.
    pub s: usize,
    /// Generations per round.
    pub m: usize,
    /// Genomes each instance contributes to the pool.
    pub k: usize,
    pub pop_size: usize,
    pub retry_rounds: usize,
    pub genome_length: usize,
    pub gene_values: u8,
    pub seed: u64,
    pub mutation_rate: f64,
    pub crossover_rate: f64,
    pub tournament_size: usize,
    pub convergence_epsilon: f64,
    /// Optional hard cap on the number of rounds.
    pub max_rounds: Option<usize>,
}

impl Default for GAConfig {
    fn default() -> Self {
        GAConfig {
            s: 10,
            m: 100,
            k: 20,
            pop_size: 100,
            retry_rounds: 2,
            genome_length: 1,
            gene_values: 4,
            seed: 0,
            mutation_rate: 0.05,
            crossover_rate: 0.9,
            tournament_size: 3,
            convergence_epsilon: 1e-9,
            max_rounds: None,
        }
    }
}

impl GAConfig {
    pub fn with_genome(mut self, genome_length: usize, gene_values: u8) -> Self {
        self.genome_length = genome_length;
        self.gene_values = gene_values;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidConfig(m.into()));
        if self.s == 0 {
            return fail("s must be at least 1");
        }
        if self.pop_size == 0 || self.k == 0 || self.k > self.pop_size {
            return fail("need 1 <= k <= pop_size");
        }
        if self.genome_length == 0 {
            return fail("genome_length must be positive");
        }
        if self.gene_values < 2 {
            return fail("gene_values must be at least 2");
        }
        if !(self.mutation_rate > 0.0 && self.mutation_rate < 1.0) {
            return fail("mutation_rate must lie in (0, 1)");
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return fail("crossover_rate must lie in [0, 1]");
        }
        if self.tournament_size == 0 {
            return fail("tournament_size must be positive");
        }
        if !(self.convergence_epsilon >= 0.0) {
            return fail("convergence_epsilon must be non-negative");
        }
        if self.max_rounds == Some(0) {
            return fail("max_rounds must be positive");
        }
        Ok(())
    }
}

/// Genome with its loss.
#[derive(Debug, Clone, PartialEq)]
pub struct Scored {
    pub loss: f64,
    pub genome: Genome,
}

fn by_loss_then_genes(a: &Scored, b: &Scored) -> Ordering {
    a.loss.total_cmp(&b.loss).then_with(|| a.genome.cmp(&b.genome))
}

/// Round loss: maps genes to a finite value.
pub type LossFn<'a> = Box<dyn Fn(&[u8]) -> f64 + Sync + 'a>;

/// Source of per-round loss functions.
pub trait Objective: Sync {
    /// Loss used for every evaluation of one round.
    fn round_loss(&self, eval_seed: u64) -> Result<LossFn<'_>>;
}

impl<F> Objective for F
where
    F: Fn(&[u8], u64) -> f64 + Sync,
{
    fn round_loss(&self, eval_seed: u64) -> Result<LossFn<'_>> {
        Ok(Box::new(move |g: &[u8]| self(g, eval_seed)))
    }
}

/// Memoizing scorer for one instance and one round.
struct Scorer<'a> {
    loss: &'a (dyn Fn(&[u8]) -> f64 + Sync),
    cache: HashMap<Vec<u8>, f64>,
    evaluations: usize,
}

impl<'a> Scorer<'a> {
    fn new(loss: &'a (dyn Fn(&[u8]) -> f64 + Sync)) -> Self {
        Scorer { loss, cache: HashMap::new(), evaluations: 0 }
    }

    fn score(&mut self, genome: Genome) -> Result<Scored> {
        if let Some(&loss) = self.cache.get(&genome.genes) {
            return Ok(Scored { loss, genome });
        }
        let loss = (self.loss)(&genome.genes);
        self.evaluations += 1;
        if !loss.is_finite() {
            return Err(Error::NonFiniteLoss { genes: genome.genes });
        }
        self.cache.insert(genome.genes.clone(), loss);
        Ok(Scored { loss, genome })
    }
}

fn tournament<'p>(pop: &'p [Scored], size: usize, rng: &mut ChaCha8Rng) -> &'p Scored {
    (0..size)
        .map(|_| &pop[rng.random_range(0..pop.len())])
        .min_by(|a, b| by_loss_then_genes(a, b))
        .expect("tournament size is positive")
}

fn evolve(scorer: &mut Scorer<'_>, start: Vec<Genome>, cfg: &GAConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Scored>> {
    let mut pop = start.into_iter().map(|g| scorer.score(g)).collect::<Result<Vec<_>>>()?;
    pop.sort_by(by_loss_then_genes);
    let len = cfg.genome_length;
    for _ in 0..cfg.m {
        let mut next = Vec::with_capacity(cfg.pop_size);
        next.push(pop[0].clone());
        while next.len() < cfg.pop_size {
            let a = tournament(&pop, cfg.tournament_size, rng);
            let b = tournament(&pop, cfg.tournament_size, rng);
            let mut genes = if len > 1 && rng.random::<f64>() < cfg.crossover_rate {
                let cut = rng.random_range(1..len);
                a.genome.genes[..cut].iter().chain(&b.genome.genes[cut..]).copied().collect()
            } else {
                a.genome.genes.clone()
            };
            for g in &mut genes {
                if rng.random::<f64>() < cfg.mutation_rate {
                    *g = rng.random_range(0..cfg.gene_values);
                }
            }
            next.push(scorer.score(Genome::new(genes))?);
        }
        next.sort_by(by_loss_then_genes);
        pop = next;
    }
    Ok(pop)
}

/// Runs `cfg.m` generations of one instance from `pop`; returns the final
/// population sorted by `(loss, genes)` and the number of fresh loss evaluations.
pub fn ga_round(
    loss: &(dyn Fn(&[u8]) -> f64 + Sync),
    pop: Vec<Genome>,
    cfg: &GAConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Scored>, usize)> {
    cfg.validate()?;
    if pop.len() != cfg.pop_size {
        return Err(Error::InvalidConfig(format!("population has {} genomes, expected {}", pop.len(), cfg.pop_size)));
    }
    if let Some(bad) = pop.iter().find(|g| g.genes.len() != cfg.genome_length || g.genes.iter().any(|&v| v >= cfg.gene_values)) {
        return Err(Error::InvalidInput(format!("genome {bad} violates the configured shape")));
    }
    let mut scorer = Scorer::new(loss);
    let out = evolve(&mut scorer, pop, cfg, rng)?;
    Ok((out, scorer.evaluations))
}

/// Result of [`multi_instance_optimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationTrace {
    /// Recorded best loss after each completed round (non-increasing).
    pub best_loss_per_round: Vec<f64>,
    pub best_genome: Genome,
    /// Fresh loss evaluations, including incumbent re-scoring.
    pub evaluations: usize,
    pub rounds: usize,
}

impl OptimizationTrace {
    pub fn best_loss(&self) -> f64 {
        self.best_loss_per_round.last().copied().unwrap_or(f64::INFINITY)
    }
}

/// Optimization failure with whatever was completed before it.
#[derive(Debug, thiserror::Error)]
#[error("{source}")]
pub struct OptimizeError {
    #[source]
    pub source: Error,
    pub partial: Option<OptimizationTrace>,
}

impl From<OptimizeError> for Error {
    fn from(e: OptimizeError) -> Self {
        e.source
    }
}

fn instance_stream(seed: u64, round: usize, instance: usize, purpose: u64) -> ChaCha8Rng {
    stream(seed, DOMAIN_GA | purpose << 56 | (round as u64) << 24 | instance as u64)
}

/// Runs the multi-instance engine until convergence.
pub fn multi_instance_optimize(
    objective: &dyn Objective,
    cfg: &GAConfig,
) -> std::result::Result<OptimizationTrace, OptimizeError> {
    let fail = |source: Error, partial: Option<OptimizationTrace>| OptimizeError { source, partial };
    cfg.validate().map_err(|e| fail(e, None))?;
    let mut starts: Vec<Vec<Genome>> = (0..cfg.s)
        .map(|i| {
            let mut rng = instance_stream(cfg.seed, 0, i, 0);
            (0..cfg.pop_size).map(|_| Genome::random(cfg.genome_length, cfg.gene_values, &mut rng)).collect()
        })
        .collect();
    let mut trace: Option<OptimizationTrace> = None;
    let mut non_improving = 0usize;
    for round in 0.. {
        let loss = objective.round_loss(mix(cfg.seed, round as u64)).map_err(|e| fail(e, trace.clone()))?;
        if let Some(t) = &trace {
            *starts[0].last_mut().expect("pop_size >= 1") = t.best_genome.clone();
        }
        let results: Vec<Result<(Vec<Scored>, usize)>> = std::mem::take(&mut starts)
            .into_par_iter()
            .enumerate()
            .map(|(i, pop)| {
                let mut rng = instance_stream(cfg.seed, round, i, 1);
                let mut scorer = Scorer::new(&*loss);
                let out = evolve(&mut scorer, pop, cfg, &mut rng)?;
                Ok((out, scorer.evaluations))
            })
            .collect();
        let mut finals = Vec::with_capacity(cfg.s);
        let mut evaluations = trace.as_ref().map_or(0, |t| t.evaluations);
        for r in results {
            let (pop, evals) = r.map_err(|e| fail(e, trace.clone()))?;
            evaluations += evals;
            finals.push(pop);
        }
        let round_best = finals
            .iter()
            .map(|p| &p[0])
            .min_by(|a, b| by_loss_then_genes(a, b))
            .expect("s >= 1")
            .clone();
        let improved = match &trace {
            None => true,
            Some(t) => {
                let rescored = loss(&t.best_genome.genes);
                evaluations += 1;
                let threshold = rescored.min(t.best_loss());
                round_best.loss < threshold - cfg.convergence_epsilon
            }
        };
        let mut t = trace.take().unwrap_or(OptimizationTrace {
            best_loss_per_round: Vec::new(),
            best_genome: round_best.genome.clone(),
            evaluations: 0,
            rounds: 0,
        });
        if improved {
            t.best_loss_per_round.push(round_best.loss);
            t.best_genome = round_best.genome.clone();
            non_improving = 0;
        } else {
            let last = t.best_loss();
            t.best_loss_per_round.push(last);
            non_improving += 1;
        }
        t.evaluations = evaluations;
        t.rounds = round + 1;
        trace = Some(t);
        if non_improving > cfg.retry_rounds || cfg.max_rounds.is_some_and(|m| round + 1 >= m) {
            break;
        }
        let pool: Vec<&Genome> = finals.iter().flat_map(|p| p.iter().take(cfg.k).map(|s| &s.genome)).collect();
        starts = (0..cfg.s)
            .map(|i| {
                let mut rng = instance_stream(cfg.seed, round + 1, i, 2);
                let draws = cfg.pop_size / 2;
                let mut pop: Vec<Genome> = (0..draws).map(|_| pool[rng.random_range(0..pool.len())].clone()).collect();
                while pop.len() < cfg.pop_size {
                    pop.push(Genome::random(cfg.genome_length, cfg.gene_values, &mut rng));
                }
                pop
            })
            .collect();
    }
    Ok(trace.expect("at least one round"))
}
