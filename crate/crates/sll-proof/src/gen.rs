//! Random typable proof terms.
//!
//! Generation runs top-down from a goal sequent. Auxiliary channels are
//! obligations that must be consumed exactly once, multiplexor channels may
//! be used any number of times, and linear channels are decomposed by their
//! left rules. Once the fuel runs out only rules that shrink the goal are
//! chosen, so generation always terminates. Every candidate is re-checked by
//! [`synthesize`] and rejected if it fails.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sll_process::Name;
use sll_types::{Judgment, SessionType};

use crate::term::ProofTerm::{self, *};
use crate::typing::synthesize;

#[derive(Clone, Debug)]
pub struct GenConfig {
    /// Depth budget for rules that do not shrink the goal (cuts, spawns).
    pub fuel: u32,
    /// Maximum depth of invented cut types and goal types.
    pub type_depth: u32,
    /// Maximum number of linear channels in the root goal.
    pub max_inputs: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { fuel: 3, type_depth: 2, max_inputs: 2 }
    }
}

type Ctx = Vec<(Name, SessionType)>;

#[derive(Clone)]
struct Goal {
    aux: Ctx,
    mux: Ctx,
    lin: Ctx,
    z: Name,
    a: SessionType,
}

struct Gen {
    rng: ChaCha8Rng,
    next: usize,
    cfg: GenConfig,
}

fn bx(d: ProofTerm) -> Box<ProofTerm> {
    Box::new(d)
}

fn is_bang(a: &SessionType) -> bool {
    matches!(a, SessionType::Bang(_))
}

impl Gen {
    fn fresh(&mut self, base: &str) -> Name {
        self.next += 1;
        Name::new(&format!("{base}{}", self.next))
    }

    fn ty(&mut self, depth: u32) -> SessionType {
        self.ty_with(depth, true)
    }

    fn ty_with(&mut self, depth: u32, bangs: bool) -> SessionType {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return SessionType::One;
        }
        let d = depth - 1;
        match self.rng.gen_range(0..if bangs { 6 } else { 4 }) {
            0 => SessionType::tensor(self.ty_with(d, bangs), self.ty_with(d, bangs)),
            1 => SessionType::lolli(self.ty_with(d, bangs), self.ty_with(d, bangs)),
            2 => SessionType::plus(self.ty_with(d, bangs), self.ty_with(d, bangs)),
            3 => SessionType::with(self.ty_with(d, bangs), self.ty_with(d, bangs)),
            _ => SessionType::bang(self.ty_with(d, false)),
        }
    }

    /// Types served by a replicated input. They contain no `!`, so a server
    /// body never ends in a promotion and can always absorb extra
    /// exponential channels; a promotion's auxiliary context is empty.
    fn server_ty(&mut self, depth: u32) -> SessionType {
        self.ty_with(depth, false)
    }

    fn split(&mut self, c: Ctx) -> (Ctx, Ctx) {
        c.into_iter().partition(|_| self.rng.gen_bool(0.5))
    }

    fn prove(&mut self, g: Goal, fuel: u32) -> ProofTerm {
        if fuel > 0 {
            // Occasionally invent a cut or use a multiplexor channel.
            let roll = self.rng.gen_range(0..10);
            if roll < 2 {
                return self.cut(g, fuel - 1);
            }
            if roll < 3 {
                return self.exp_cut(g, fuel - 1, true);
            }
            if roll < 4 {
                return self.exp_cut(g, fuel - 1, false);
            }
            if roll < 6 && !g.mux.is_empty() {
                return self.spawn_mux(g, fuel - 1);
            }
        }
        // Shrinking moves, in an order that always makes progress.
        let nonbang: Vec<usize> = (0..g.lin.len()).filter(|&i| !is_bang(&g.lin[i].1)).collect();
        if let Some(&i) = nonbang.choose(&mut self.rng) {
            return self.left(g, i, fuel);
        }
        let can_promote = is_bang(&g.a) && g.aux.is_empty();
        if can_promote && (g.lin.is_empty() || self.rng.gen_bool(0.5)) {
            return self.right(g, fuel);
        }
        if !g.lin.is_empty() {
            let i = self.rng.gen_range(0..g.lin.len());
            return self.left(g, i, fuel);
        }
        if !g.aux.is_empty() {
            let i = self.rng.gen_range(0..g.aux.len());
            return self.spawn_aux(g, i, fuel);
        }
        self.right(g, fuel)
    }

    fn left(&mut self, mut g: Goal, i: usize, fuel: u32) -> ProofTerm {
        use SessionType as T;
        let (x, a) = g.lin.remove(i);
        match a {
            T::One => OneL(x, bx(self.prove(g, fuel))),
            T::Tensor(a, b) => {
                let y = self.fresh("y");
                g.lin.push((y.clone(), *a));
                g.lin.push((x.clone(), *b));
                TensorL(x, y, bx(self.prove(g, fuel)))
            }
            T::Lolli(a, b) => {
                let y = self.fresh("y");
                let (l1, l2) = self.split(g.lin);
                let (g1, g2) = self.split(g.aux);
                let d = self.prove(Goal { aux: g1, mux: g.mux.clone(), lin: l1, z: y.clone(), a: *a }, fuel);
                let mut l2 = l2;
                l2.push((x.clone(), *b));
                let e = self.prove(Goal { aux: g2, mux: g.mux, lin: l2, z: g.z, a: g.a }, fuel);
                LolliL(x, y, bx(d), bx(e))
            }
            T::Plus(a, b) => {
                let mut ga = g.clone();
                ga.lin.push((x.clone(), *a));
                g.lin.push((x.clone(), *b));
                PlusL(x, bx(self.prove(ga, fuel)), bx(self.prove(g, fuel)))
            }
            T::With(a, b) => {
                if self.rng.gen_bool(0.5) {
                    g.lin.push((x.clone(), *a));
                    WithL1(x, *b, bx(self.prove(g, fuel)))
                } else {
                    g.lin.push((x.clone(), *b));
                    WithL2(x, *a, bx(self.prove(g, fuel)))
                }
            }
            T::Bang(a) => {
                if self.rng.gen_bool(0.5) {
                    g.mux.push((x.clone(), *a));
                    BangLSharp(x, bx(self.prove(g, fuel)))
                } else {
                    g.aux.push((x.clone(), *a));
                    BangLBang(x, bx(self.prove(g, fuel)))
                }
            }
        }
    }

    fn right(&mut self, mut g: Goal, fuel: u32) -> ProofTerm {
        use SessionType as T;
        let z = g.z.clone();
        match g.a.clone() {
            T::One => OneR(z),
            T::Tensor(a, b) => {
                let y = self.fresh("y");
                let (l1, l2) = self.split(g.lin);
                let (g1, g2) = self.split(g.aux);
                let d = self.prove(Goal { aux: g1, mux: g.mux.clone(), lin: l1, z: y.clone(), a: *a }, fuel);
                let e = self.prove(Goal { aux: g2, mux: g.mux, lin: l2, z: z.clone(), a: *b }, fuel);
                TensorR(z, y, bx(d), bx(e))
            }
            T::Lolli(a, b) => {
                let y = self.fresh("y");
                g.lin.push((y.clone(), *a));
                g.a = *b;
                LolliR(z, y, bx(self.prove(g, fuel)))
            }
            T::Plus(a, b) => {
                if self.rng.gen_bool(0.5) {
                    g.a = *a;
                    PlusR1(z, *b, bx(self.prove(g, fuel)))
                } else {
                    g.a = *b;
                    PlusR2(z, *a, bx(self.prove(g, fuel)))
                }
            }
            T::With(a, b) => {
                let mut ga = g.clone();
                ga.a = *a;
                g.a = *b;
                WithR(z, bx(self.prove(ga, fuel)), bx(self.prove(g, fuel)))
            }
            T::Bang(a) => {
                // Promotion: every linear channel is `!B` and becomes auxiliary.
                let y = self.fresh("y");
                let xs: Vec<Name> = g.lin.iter().map(|(x, _)| x.clone()).collect();
                let aux = g
                    .lin
                    .into_iter()
                    .map(|(x, t)| match t {
                        T::Bang(b) => (x, *b),
                        _ => unreachable!("promotion with a non-exponential linear channel"),
                    })
                    .collect();
                let body = self.prove(Goal { aux, mux: Vec::new(), lin: Vec::new(), z: y.clone(), a: *a }, fuel);
                BangR(z, y, xs, bx(body))
            }
        }
    }

    fn spawn_aux(&mut self, mut g: Goal, i: usize, fuel: u32) -> ProofTerm {
        let (x, a) = g.aux.remove(i);
        let y = self.fresh("y");
        g.lin.push((y.clone(), a));
        FlatBang(x, y, bx(self.prove(g, fuel)))
    }

    fn spawn_mux(&mut self, mut g: Goal, fuel: u32) -> ProofTerm {
        let (x, a) = g.mux.choose(&mut self.rng).unwrap().clone();
        let y = self.fresh("y");
        g.lin.push((y.clone(), a));
        FlatSharp(x, y, bx(self.prove(g, fuel)))
    }

    fn cut(&mut self, g: Goal, fuel: u32) -> ProofTerm {
        let x = self.fresh("c");
        let c = self.ty(self.cfg.type_depth);
        let (l1, mut l2) = self.split(g.lin);
        let (g1, g2) = self.split(g.aux);
        let d = self.prove(Goal { aux: g1, mux: g.mux.clone(), lin: l1, z: x.clone(), a: c.clone() }, fuel);
        l2.push((x.clone(), c));
        let e = self.prove(Goal { aux: g2, mux: g.mux, lin: l2, z: g.z, a: g.a }, fuel);
        Cut(x, bx(d), bx(e))
    }

    fn exp_cut(&mut self, mut g: Goal, fuel: u32, bang: bool) -> ProofTerm {
        let x = self.fresh("s");
        let y = self.fresh("y");
        let c = self.server_ty(self.cfg.type_depth);
        let server_aux = if bang {
            let (g1, g2) = self.split(std::mem::take(&mut g.aux));
            g.aux = g2;
            g1
        } else {
            Vec::new()
        };
        let d =
            self.prove(Goal { aux: server_aux, mux: Vec::new(), lin: Vec::new(), z: y.clone(), a: c.clone() }, fuel);
        if bang {
            g.aux.push((x.clone(), c));
            CutBang(x, y, bx(d), bx(self.prove(g, fuel)))
        } else {
            g.mux.push((x.clone(), c));
            CutSharp(x, y, bx(d), bx(self.prove(g, fuel)))
        }
    }
}

/// A typable term and its synthesized judgment, determined by `seed`.
pub fn generate(seed: u64, cfg: &GenConfig) -> (Judgment, ProofTerm) {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed), next: 0, cfg: cfg.clone() };
    loop {
        g.next = 0;
        let k = g.rng.gen_range(0..=cfg.max_inputs);
        let lin = (0..k).map(|i| (Name::new(&format!("i{i}")), g.ty(cfg.type_depth))).collect();
        let a = g.ty(cfg.type_depth);
        let goal = Goal { aux: Vec::new(), mux: Vec::new(), lin, z: Name::new("z"), a };
        let d = g.prove(goal, cfg.fuel);
        if let Ok(ev) = synthesize(&d) {
            return (ev.judgment, d);
        }
    }
}
