//! A reduction engine over a flat pool of prefixed components.
//!
//! Restrictions are hoisted as soon as a component is spawned, with binders
//! renamed to globally fresh names, so the pool plus a set of hoisted names is
//! always congruent to the process being run. Redexes are found through a
//! per-channel index instead of re-canonicalising after every step, which is
//! what makes the blowup family affordable at `n = 10`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sll_process::process::Process::{self, *};
use sll_process::process::{new, new_all, nil, out, par_all, rep};
use sll_process::{canonical_form, soup_of, Name};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Oldest thread first. A continuation keeps the age of the prefix it
    /// came from, while a spawned server body starts a new thread, so the
    /// blowup family unfolds one level at a time.
    First,
    /// Seeded uniform choice of channel, then of sender and receiver.
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub strategy: Strategy,
    pub max_steps: u64,
    /// Keep a snapshot of the process after each step.
    pub record_processes: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { strategy: Strategy::First, max_steps: u64::MAX, record_processes: false }
    }
}

#[derive(Clone, Debug)]
pub struct TraceStep<M> {
    pub process: Option<Process>,
    pub size: u64,
    pub data: M,
}

/// A reduction sequence. `steps[i]` is the state after `i + 1` reductions.
#[derive(Clone, Debug)]
pub struct Trace<M = ()> {
    pub initial: Process,
    pub initial_size: u64,
    pub steps: Vec<TraceStep<M>>,
    /// True when the last state has no redex.
    pub terminated: bool,
    pub final_process: Process,
}

impl<M> Trace<M> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn peak_size(&self) -> u64 {
        self.steps.iter().map(|s| s.size).max().unwrap_or(0).max(self.initial_size)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum Kind {
    Data,
    Choice,
}

/// Components keyed by (thread age, slot).
#[derive(Default)]
struct Ends {
    senders: BTreeSet<(u64, usize)>,
    receivers: BTreeSet<(u64, usize)>,
}

struct Pool {
    comps: Vec<Option<Process>>,
    ages: Vec<u64>,
    threads: u64,
    binders: Vec<Name>,
    index: HashMap<(Name, Kind), Ends>,
    active: BTreeSet<(Name, Kind)>,
    size: u64,
    taken: BTreeSet<Name>,
    counter: u64,
}

fn role(p: &Process) -> (Name, Kind, bool) {
    match p {
        Out(x, ..) => (x.clone(), Kind::Data, true),
        In(x, ..) | RepIn(x, ..) => (x.clone(), Kind::Data, false),
        SelL(x, _) | SelR(x, _) => (x.clone(), Kind::Choice, true),
        Case(x, ..) => (x.clone(), Kind::Choice, false),
        _ => unreachable!("pool holds prefixes only"),
    }
}

impl Pool {
    fn new(p: &Process) -> Pool {
        let mut pool = Pool {
            comps: Vec::new(),
            ages: Vec::new(),
            threads: 0,
            binders: Vec::new(),
            index: HashMap::new(),
            active: BTreeSet::new(),
            size: 0,
            taken: p.all_names(),
            counter: 0,
        };
        pool.spawn(p, &BTreeMap::new(), None);
        pool
    }

    fn fresh(&mut self, base: &Name) -> Name {
        loop {
            self.counter += 1;
            let n = Name::new(&format!("{}'{}", base.root(), self.counter));
            if !self.taken.contains(&n) {
                return n;
            }
        }
    }

    /// Add a process, hoisting its restrictions under fresh names. A
    /// continuation passes the age of its thread; anything else is new.
    fn spawn(&mut self, p: &Process, env: &BTreeMap<Name, Name>, age: Option<u64>) {
        let age = age.unwrap_or_else(|| {
            self.threads += 1;
            self.threads
        });
        match p {
            Nil => {}
            Par(a, b) => {
                self.spawn(a, env, Some(age));
                self.spawn(b, env, Some(age));
            }
            New(x, a) => {
                let f = self.fresh(x);
                self.binders.push(f.clone());
                let mut e = env.clone();
                e.insert(x.clone(), f);
                self.spawn(a, &e, Some(age));
            }
            prefix => self.insert(prefix.rename(env), age),
        }
    }

    fn insert(&mut self, c: Process, age: u64) {
        let i = self.comps.len();
        let (x, k, sends) = role(&c);
        self.size += c.size();
        let ends = self.index.entry((x.clone(), k)).or_default();
        if sends {
            ends.senders.insert((age, i));
        } else {
            ends.receivers.insert((age, i));
        }
        if !ends.senders.is_empty() && !ends.receivers.is_empty() {
            self.active.insert((x, k));
        }
        self.comps.push(Some(c));
        self.ages.push(age);
    }

    fn remove(&mut self, i: usize) -> Process {
        let c = self.comps[i].take().expect("live component");
        let (x, k, sends) = role(&c);
        self.size -= c.size();
        let key = (x, k);
        let ends = self.index.get_mut(&key).expect("indexed");
        let slot = (self.ages[i], i);
        if sends {
            ends.senders.remove(&slot);
        } else {
            ends.receivers.remove(&slot);
        }
        if ends.senders.is_empty() || ends.receivers.is_empty() {
            self.active.remove(&key);
        }
        c
    }

    fn pick(&self, strategy: Strategy, rng: &mut Option<ChaCha8Rng>) -> Option<(usize, usize)> {
        if self.active.is_empty() {
            return None;
        }
        match strategy {
            Strategy::First => {
                let mut best: Option<((u64, usize), (u64, usize))> = None;
                for key in &self.active {
                    let e = &self.index[key];
                    let s = *e.senders.iter().next().unwrap();
                    if best.is_none_or(|(b, _)| s < b) {
                        best = Some((s, *e.receivers.iter().next().unwrap()));
                    }
                }
                best.map(|(s, r)| (s.1, r.1))
            }
            Strategy::Random(_) => {
                let rng = rng.as_mut().unwrap();
                let key = self.active.iter().nth(rng.gen_range(0..self.active.len())).unwrap();
                let e = &self.index[key];
                let s = e.senders.iter().nth(rng.gen_range(0..e.senders.len())).unwrap().1;
                let r = e.receivers.iter().nth(rng.gen_range(0..e.receivers.len())).unwrap().1;
                Some((s, r))
            }
        }
    }

    fn step(&mut self, s: usize, r: usize) {
        let sender = self.remove(s);
        let receiver = self.comps[r].clone().expect("live receiver");
        let none = BTreeMap::new();
        let (sa, ra) = (Some(self.ages[s]), Some(self.ages[r]));
        match (sender, receiver) {
            (Out(_, y, p), In(_, z, q)) => {
                self.remove(r);
                self.spawn(&p, &none, sa);
                self.spawn(&q.substitute(&z, &y), &none, ra);
            }
            (Out(_, y, p), RepIn(_, z, q)) => {
                self.spawn(&p, &none, sa);
                self.spawn(&q.substitute(&z, &y), &none, None);
            }
            (SelL(_, p), Case(_, q, _)) | (SelR(_, p), Case(_, _, q)) => {
                self.remove(r);
                self.spawn(&p, &none, sa);
                self.spawn(&q, &none, ra);
            }
            (a, b) => unreachable!("not a redex: {a} / {b}"),
        }
    }

    fn process(&self) -> Process {
        let comps: Vec<Process> = self.comps.iter().flatten().cloned().collect();
        let mut used = BTreeSet::new();
        for c in &comps {
            used.extend(c.free_names());
        }
        let bs: Vec<Name> = self.binders.iter().filter(|b| used.contains(*b)).cloned().collect();
        new_all(bs, par_all(comps))
    }
}

/// Reduce until no redex remains or `max_steps` reductions have been made.
pub fn run_to_normal_form(p: &Process, opts: &RunOptions) -> Trace {
    let mut pool = Pool::new(p);
    let mut rng = match opts.strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Strategy::First => None,
    };
    let initial_size = p.size();
    let mut steps = Vec::new();
    let mut terminated = false;
    loop {
        let choice = pool.pick(opts.strategy, &mut rng);
        let Some((s, r)) = choice else {
            terminated = true;
            break;
        };
        if steps.len() as u64 >= opts.max_steps {
            break;
        }
        pool.step(s, r);
        let snapshot = opts.record_processes.then(|| pool.process());
        steps.push(TraceStep { process: snapshot, size: pool.size, data: () });
    }
    Trace { initial: p.clone(), initial_size, steps, terminated, final_process: pool.process() }
}

/// Drop replicated inputs on restricted channels that nothing else mentions.
/// Such servers can never fire; removing them is a bisimilarity, not one of
/// the congruence axioms, so this is kept separate from `canonical_form`.
pub fn collect_inert_servers(p: &Process) -> Process {
    let c = canonical_form(p);
    let (bs, mut comps) = soup_of(&c);
    loop {
        let dead = comps.iter().position(|c| match c {
            RepIn(x, _, _) if bs.contains(x) => {
                let others = comps.iter().filter(|d| !std::ptr::eq(*d, c));
                others.into_iter().all(|d| !d.is_free(x))
            }
            _ => false,
        });
        match dead {
            Some(i) => {
                comps.remove(i);
            }
            None => break,
        }
    }
    canonical_form(&new_all(bs, par_all(comps)))
}

fn chan(i: usize) -> Name {
    Name::new(&format!("x{i}"))
}

/// The composition of a terminal server on `x_n`, the duplicating servers
/// `dupser_0 … dupser_{n-1}` and a single client on `x_0`, all restricted.
///
/// `dupser_i = !x_i?(y). new z. x_{i+1}!(z). new w. x_{i+1}!(w). 0`
pub fn build_blowup_family(n: usize) -> Process {
    let mut comps = vec![rep(chan(n), "y", nil())];
    for i in (0..n).rev() {
        let body = new("z", out(chan(i + 1), "z", new("w", out(chan(i + 1), "w", nil()))));
        comps.push(rep(chan(i), "y", body));
    }
    comps.push(new("y", out(chan(0), "y", nil())));
    new_all((0..=n).map(chan), par_all(comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use sll_process::{parse_process, struct_congruent};

    #[test]
    fn nil_is_already_normal() {
        let t = run_to_normal_form(&Nil, &RunOptions::default());
        assert!(t.terminated);
        assert!(t.is_empty());
    }

    #[test]
    fn step_limit() {
        let p = build_blowup_family(3);
        let t = run_to_normal_form(&p, &RunOptions { max_steps: 3, ..Default::default() });
        assert!(!t.terminated);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn blowup_counts() {
        for n in 1..=6 {
            let p = build_blowup_family(n);
            assert_eq!(p.size(), 3 * n as u64 + 2);
            let t = run_to_normal_form(&p, &RunOptions::default());
            assert!(t.terminated);
            assert_eq!(t.len() as u64, (1u64 << (n + 1)) - 1);
            assert!(t.peak_size() >= 1 << n);
            assert_eq!(collect_inert_servers(&t.final_process), Nil);
        }
    }

    #[test]
    fn snapshots_match_pool() {
        let p = parse_process("new a. (a!(b). c!(d).0 | a?(e). e!(f).0)").unwrap();
        let t = run_to_normal_form(&p, &RunOptions { record_processes: true, ..Default::default() });
        assert_eq!(t.len(), 1);
        let q = t.steps[0].process.clone().unwrap();
        assert!(struct_congruent(&q, &parse_process("c!(d).0 | b!(f).0").unwrap()));
        assert_eq!(t.steps[0].size, q.size());
    }

    #[test]
    fn random_strategy_is_seeded() {
        let p = build_blowup_family(4);
        let opts = RunOptions { strategy: Strategy::Random(7), record_processes: true, ..Default::default() };
        let a = run_to_normal_form(&p, &opts);
        let b = run_to_normal_form(&p, &opts);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.steps.iter().zip(&b.steps) {
            assert_eq!(x.process, y.process);
        }
    }
}
