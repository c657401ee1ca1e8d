//! Fixtures and a seeded generator of valid data shared by the integration
//! tests.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use luna_datum::arith::{rat, to_q, to_z, QVec, ZVec};
use luna_datum::containment::colored_subspace_candidates;
use luna_datum::document::{emit_datum, parse_datum};
use luna_datum::luna::AbstractColor;
use luna_datum::root_datum::{DynkinType, Factor, Isogeny};
use luna_datum::{
    identity_component_datum, normalizer_datum, quotient_datum, spherical_roots_of_group, validate, Functional,
    LunaDatum, RootDatum, Sublattice,
};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIXTURES: [&str; 6] =
    ["spin5_full_rank", "spin7_mixed", "spin7_doubled", "g2_doubled", "sl2sl2_simple", "pgl2pgl2_sum"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture present")
}

pub fn fixture(name: &str) -> LunaDatum {
    parse_datum(&fixture_text(name)).expect("fixture parses")
}

pub fn all_fixtures() -> Vec<(&'static str, LunaDatum)> {
    FIXTURES.iter().map(|n| (*n, fixture(n))).collect()
}

/// `Σ ∩ S` as simple-root indices.
pub fn simple_spherical_roots(s: &LunaDatum) -> BTreeSet<usize> {
    s.sigma_a()
}

fn groups() -> Vec<Arc<RootDatum>> {
    use DynkinType::*;
    use Isogeny::*;
    let f = |ty, rank, isogeny| Factor { ty, rank, isogeny };
    let mut out: Vec<Arc<RootDatum>> = ["SL2", "PGL2", "SL3", "Spin5", "Spin7", "G2", "SL2xSL2", "PGL2xPGL2"]
        .iter()
        .map(|n| Arc::new(RootDatum::preset(n).unwrap()))
        .collect();
    for (factors, torus) in [
        (vec![f(A, 2, Adjoint)], 0),
        (vec![f(B, 2, Adjoint)], 0),
        (vec![f(C, 3, SimplyConnected)], 0),
        (vec![f(A, 3, SimplyConnected)], 0),
        (vec![f(A, 1, SimplyConnected)], 1),
        (vec![f(A, 1, SimplyConnected), f(A, 2, Adjoint)], 0),
    ] {
        out.push(Arc::new(RootDatum::build(&factors, torus).unwrap()));
    }
    out
}

fn key(s: &LunaDatum) -> String {
    emit_datum(s)
}

/// Derived outputs of the fixtures that are again valid data.
pub fn derived_seeds() -> Vec<LunaDatum> {
    let mut out = Vec::new();
    for (_, s) in all_fixtures() {
        out.push(normalizer_datum(&s).unwrap());
        out.push(identity_component_datum(&s).unwrap());
        for c in colored_subspace_candidates(&s).unwrap() {
            out.push(quotient_datum(&s, &c).unwrap());
        }
    }
    out
}

/// `ς(D)` for `D ∈ 𝒟ᵃ`, read off without validating.
fn moved_by(s: &LunaDatum, d: &AbstractColor) -> BTreeSet<usize> {
    s.sigma_a().into_iter().filter(|&a| s.pair(&d.rho, &s.group().simple_root(a)) == Ok(rat(1))).collect()
}

struct Generator {
    rng: ChaCha8Rng,
    groups: Vec<Arc<RootDatum>>,
}

impl Generator {
    fn small(&mut self) -> i64 {
        self.rng.random_range(-1..=1)
    }

    /// `Σ = ∅`, `ℳ` a random lattice of characters orthogonal to `Sᵖ`.
    fn horospherical(&mut self) -> Option<LunaDatum> {
        let g = self.groups.choose(&mut self.rng)?.clone();
        let sp: BTreeSet<usize> = (0..g.num_simple_roots()).filter(|_| self.rng.random_bool(0.4)).collect();
        let n = g.rank();
        let mut gens = Vec::new();
        for _ in 0..self.rng.random_range(0..=n) {
            let x: ZVec = (0..n).map(|_| self.rng.random_range(-2..=2).into()).collect();
            gens.push(x);
        }
        let m = Sublattice::from_generators(n, &gens).ok()?;
        let perp: Vec<QVec> = sp.iter().map(|&a| to_q(g.coroot(a))).collect();
        let orth = luna_datum::Subspace::span(n, &perp).ok()?.annihilator();
        let m = m.intersect_subspace(&orth);
        LunaDatum::new(g, m, Vec::new(), sp, Vec::new()).ok()
    }

    /// `ℳ = ℤγ` for a spherical root `γ` of a random group.
    fn rank_one(&mut self) -> Option<LunaDatum> {
        let g = self.groups.choose(&mut self.rng)?.clone();
        let roots = spherical_roots_of_group(&g);
        let r = roots.choose(&mut self.rng)?;
        let sp: BTreeSet<usize> =
            r.sp_gamma.iter().copied().filter(|a| r.spp.contains(a) || self.rng.random_bool(0.5)).collect();
        let m = Sublattice::from_generators(g.rank(), std::slice::from_ref(&r.gamma)).ok()?;
        let gq = to_q(&r.gamma);
        let da = match g.simple_root_index(&gq) {
            Some(_) => {
                let one = m.functional_from_values(std::slice::from_ref(&gq), &[rat(1)]).ok()?;
                vec![
                    AbstractColor { label: "D+".into(), rho: one.clone() },
                    AbstractColor { label: "D-".into(), rho: one },
                ]
            }
            None => Vec::new(),
        };
        LunaDatum::new(g, m, vec![r.gamma.clone()], sp, da).ok()
    }

    /// `ℳ = ℤγ₁ ⊕ ℤγ₂` with random colors for simple `γᵢ`.
    fn rank_two(&mut self) -> Option<LunaDatum> {
        let g = self.groups.choose(&mut self.rng)?.clone();
        let roots = spherical_roots_of_group(&g);
        let r1 = roots.choose(&mut self.rng)?;
        let r2 = roots.choose(&mut self.rng)?;
        let rows = vec![to_q(&r1.gamma), to_q(&r2.gamma)];
        let m = Sublattice::from_generators(g.rank(), &[r1.gamma.clone(), r2.gamma.clone()]).ok()?;
        if m.rank() != 2 {
            return None;
        }
        let sp: BTreeSet<usize> =
            r1.sp_gamma.intersection(&r2.sp_gamma).copied().filter(|_| self.rng.random_bool(0.5)).collect();
        let mut da = Vec::new();
        for k in 0..2 {
            let Some(a) = g.simple_root_index(&rows[k]) else { continue };
            let mut plus = vec![rat(0), rat(0)];
            plus[k] = rat(1);
            plus[1 - k] = rat(self.rng.random_range(-2..=1));
            let plus = m.functional_from_values(&rows, &plus).ok()?;
            let minus = m.restrict_covector(g.coroot(a)).add(&plus.scaled(&rat(-1)));
            let name = g.root_name(a);
            da.push(AbstractColor { label: format!("D+{name}"), rho: plus });
            da.push(AbstractColor { label: format!("D-{name}"), rho: minus });
        }
        LunaDatum::new(g, m, vec![r1.gamma.clone(), r2.gamma.clone()], sp, da).ok()
    }

    /// Passes to a random sublattice of index 2 or 3, keeping the rays of `Σ`.
    fn sublattice(&mut self, s: &LunaDatum) -> Option<LunaDatum> {
        let k = self.rng.random_range(2..=3);
        let subs = s.lattice().sublattices_of_index(k);
        let mt = subs.choose(&mut self.rng)?.clone();
        let mut sigma = Vec::new();
        for x in s.sigma() {
            let mult = (1..=6).find(|j| mt.contains(&to_q(&x.iter().map(|c| c * j).collect::<ZVec>())))?;
            sigma.push(x.iter().map(|c| c * mult).collect::<ZVec>());
        }
        let g = s.group();
        let mut da = Vec::new();
        for d in s.da() {
            let moved = moved_by(s, d);
            if moved.iter().any(|&a| sigma.iter().any(|x| to_q(x) == g.simple_root(a))) {
                da.push(AbstractColor { label: d.label.clone(), rho: s.lattice().transport(&d.rho, &mt).ok()? });
            }
        }
        LunaDatum::new(g.clone(), mt, sigma, s.sp().clone(), da).ok()
    }

    /// Adjoins one vector: a random character, or half an element of `ℳ`.
    fn superlattice(&mut self, s: &LunaDatum) -> Option<LunaDatum> {
        let g = s.group();
        let n = g.rank();
        let m = s.lattice();
        let extra: QVec = if self.rng.random_bool(0.5) && m.rank() > 0 {
            let coeffs: Vec<i64> = (0..m.rank()).map(|_| self.small()).collect();
            let x = m.point(&coeffs.iter().map(|&c| c.into()).collect::<Vec<_>>());
            x.iter().map(|c| luna_datum::Rat::new(c.clone(), 2.into())).collect()
        } else {
            (0..n).map(|_| rat(self.rng.random_range(-1..=1))).collect()
        };
        let extra_z = to_z(&extra)?;
        let mut gens: Vec<ZVec> = m.basis().to_vec();
        gens.push(extra_z);
        let mp = Sublattice::from_generators(n, &gens).ok()?;
        let grows = mp.rank() > m.rank();
        let mut rows = m.basis_q();
        if grows {
            rows.push(extra.clone());
        }
        let mut da = Vec::new();
        for d in s.da() {
            let rho = if grows {
                let mut values: QVec = m.basis_q().iter().map(|b| m.eval(&d.rho, b).unwrap()).collect();
                values.push(rat(self.small()));
                mp.functional_from_values(&rows, &values).ok()?
            } else {
                m.transport(&d.rho, &mp).ok()?
            };
            da.push(AbstractColor { label: d.label.clone(), rho });
        }
        LunaDatum::new(g.clone(), mp, s.sigma().to_vec(), s.sp().clone(), da).ok()
    }

    /// One to three mutations; intermediate steps need not be valid.
    fn mutate(&mut self, mut s: LunaDatum) -> Option<LunaDatum> {
        for _ in 0..self.rng.random_range(1..=3) {
            s = match self.rng.random_range(0..10) {
                0..=2 => self.sublattice(&s),
                3..=5 => self.superlattice(&s),
                6 | 7 => self.toggle_sp(&s),
                _ => self.perturb(&s),
            }?;
        }
        Some(s)
    }

    fn toggle_sp(&mut self, s: &LunaDatum) -> Option<LunaDatum> {
        let g = s.group();
        let a = self.rng.random_range(0..g.num_simple_roots());
        let mut sp = s.sp().clone();
        if !sp.remove(&a) {
            sp.insert(a);
        }
        LunaDatum::new(g.clone(), s.lattice().clone(), s.sigma().to_vec(), sp, s.da().to_vec()).ok()
    }

    /// Moves `ρ` of one color by a small vector and its partner by the
    /// opposite vector, keeping the sum fixed.
    fn perturb(&mut self, s: &LunaDatum) -> Option<LunaDatum> {
        let da = s.da();
        let i = self.rng.random_range(0..da.len().max(1));
        let moved = moved_by(s, da.get(i)?);
        let j = (0..da.len()).find(|&j| j != i && !moved_by(s, &da[j]).is_disjoint(&moved))?;
        let delta: QVec = (0..s.rank()).map(|_| rat(self.small())).collect();
        let mut out = da.to_vec();
        out[i].rho = out[i].rho.add(&Functional(delta.clone()));
        out[j].rho = out[j].rho.add(&Functional(delta.iter().map(|x| -x).collect()));
        LunaDatum::new(s.group().clone(), s.lattice().clone(), s.sigma().to_vec(), s.sp().clone(), out).ok()
    }
}

/// `count` distinct valid data, none of them a fixture, from a fixed seed.
pub fn random_valid_data(seed: u64, count: usize) -> Vec<LunaDatum> {
    let mut gen = Generator { rng: ChaCha8Rng::seed_from_u64(seed), groups: groups() };
    let mut pool: Vec<LunaDatum> = all_fixtures().into_iter().map(|(_, s)| s).collect();
    let mut seen: BTreeSet<String> = pool.iter().map(key).collect();
    let mut out = Vec::new();
    let mut accept = |s: LunaDatum, pool: &mut Vec<LunaDatum>, out: &mut Vec<LunaDatum>| {
        if validate(&s).is_empty() && seen.insert(key(&s)) {
            pool.push(s.clone());
            out.push(s);
        }
    };
    for s in derived_seeds() {
        accept(s, &mut pool, &mut out);
    }
    let seeds = pool.len();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 200_000, "generator stalled at {} data", out.len());
        // Half of the sources are fixtures or their derived data.
        let source = if gen.rng.random_bool(0.5) {
            pool[gen.rng.random_range(0..seeds)].clone()
        } else {
            pool[gen.rng.random_range(0..pool.len())].clone()
        };
        let candidate = match gen.rng.random_range(0..16) {
            0 => gen.horospherical(),
            1 => gen.rank_one(),
            2..=5 => gen.rank_two(),
            _ => gen.mutate(source),
        };
        if let Some(s) = candidate {
            accept(s, &mut pool, &mut out);
        }
    }
    out.truncate(count);
    out
}

/// Invariant failures of one valid datum. Subdata are taken over all
/// candidate colored subspaces with finite part of index `≤ max_index`.
pub fn invariant_failures(s: &LunaDatum, max_index: u64) -> Vec<String> {
    use luna_datum::containment::*;
    use luna_datum::{datum_equal, is_connected};
    let mut out = Vec::new();
    let mut fail = |what: &str| out.push(what.to_string());

    let n = normalizer_datum(s).unwrap();
    if !validate(&n).is_empty() {
        fail("normalizer is not valid");
    }
    if !distinguished_roots_discrepancies(s).unwrap().is_empty() {
        fail("the two characterizations of distinguished roots differ");
    }

    let s0 = identity_component_datum(s).unwrap();
    if !validate(&s0).is_empty() {
        fail("identity component is not valid");
    }
    if !datum_equal(&identity_component_datum(&s0).unwrap(), &s0) {
        fail("identity component is not idempotent");
    }
    if !is_connected(&s0).unwrap() {
        fail("identity component is not connected");
    }
    let (lhs, rhs) = identity_component_a_roots(s, &s0);
    if lhs != rhs {
        fail("simple spherical roots of the identity component");
    }

    for c in colored_subspace_candidates(s).unwrap() {
        if !validate(&quotient_datum(s, &c).unwrap()).is_empty() {
            fail("quotient is not valid");
        }
    }
    for pair in distinguished_pairs(s, max_index).unwrap() {
        let sub = subdatum(s, &pair).unwrap();
        if !sub.violations.is_empty() {
            fail("subdatum is not valid");
        }
        if !cone_identity_holds(s, &sub.datum).unwrap() {
            fail("cone of the subdatum is not the section of cone(Σ)");
        }
        let (c, mt) = stein_decompose(s, &pair).unwrap();
        let q = quotient_datum(s, &c).unwrap();
        let via = subdatum(&q, &DistinguishedPair { mt, d1: BTreeSet::new() }).unwrap();
        if !datum_equal(&via.datum, &sub.datum) {
            fail("Stein round trip");
        }
    }
    for sub in enumerate_finite_subdata(s, 2).unwrap() {
        if !sub.violations.is_empty() {
            fail("finite-index subdatum is not valid");
        }
        if !finite_quotient_cross_check(s, &sub.datum).unwrap() {
            fail("finite-index subdatum drops a root that is not distinguished");
        }
    }
    out
}
