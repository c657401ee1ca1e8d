//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use luna_datum::arith::{rat, ratio, to_q, zvec, QVec, ZVec};
use luna_datum::containment::{check_pair, d_closure, enumerate_finite_subdata};
use luna_datum::document::parse_datum;
use luna_datum::{
    datum_equal, full_colors, identity_component_datum, is_connected, normalizer_datum, spherical_roots_of_group,
    validate, ColorType, LunaDatum, RootDatum, Sublattice,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, what: &str) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn root(s: &LunaDatum, coeffs: &[i64]) -> ZVec {
    let c: QVec = coeffs.iter().map(|&x| rat(x)).collect();
    luna_datum::arith::to_z(&s.group().from_root_coefficients(&c)).unwrap()
}

fn sigma_set(s: &LunaDatum) -> BTreeSet<ZVec> {
    s.sigma().iter().cloned().collect()
}

fn criterion_1() -> Outcome {
    let s = common::fixture("spin7_mixed");
    ensure(validate(&s).is_empty(), "validate reports violations")?;
    ensure(is_connected(&s).map_err(|e| e.to_string())?, "not connected")?;
    let s0 = identity_component_datum(&s).map_err(|e| e.to_string())?;
    ensure(datum_equal(&s0, &s), "identity component differs from the input")
}

fn criterion_2() -> Outcome {
    let s = common::fixture("spin7_mixed");
    let n = normalizer_datum(&s).map_err(|e| e.to_string())?;
    let expected_sigma = BTreeSet::from([root(&s, &[2, 0, 0]), root(&s, &[0, 2, 2])]);
    ensure(sigma_set(&n) == expected_sigma, "Σᴺ ≠ {2α₁, 2α₂+2α₃}")?;
    let span = Sublattice::from_generators(3, &expected_sigma.iter().cloned().collect::<Vec<_>>()).unwrap();
    ensure(n.lattice() == &span, "ℳᴺ is not spanned by Σᴺ")?;
    ensure(n.sp() == &BTreeSet::from([2]), "Sᵖ ≠ {α₃}")?;
    ensure(n.da().is_empty(), "𝒟ᵃ of the normalizer is not empty")?;
    ensure(datum_equal(&n, &common::fixture("spin7_doubled")), "normalizer differs from the second fixture")
}

fn criterion_3() -> Outcome {
    let s = common::fixture("spin7_doubled");
    let s0 = identity_component_datum(&s).map_err(|e| e.to_string())?;
    let expected = BTreeSet::from([root(&s, &[1, 0, 0]), root(&s, &[0, 2, 2])]);
    ensure(sigma_set(&s0) == expected, "Σ° ≠ {α₁, 2α₂+2α₃}")?;
    ensure(s0.da().len() == 2, "expected exactly two colors in 𝒟ᵃ°")?;
    let half = s0.coroot_on_m(0).scaled(&ratio(1, 2));
    let colors = full_colors(&s0).map_err(|e| e.to_string())?;
    let new: Vec<_> = colors.iter().filter(|c| c.moved == BTreeSet::from([0])).collect();
    ensure(new.len() == 2, "α₁ does not move exactly two colors")?;
    ensure(new.iter().all(|c| c.ctype == ColorType::A && c.rho == half), "new colors are not of type a with ρ = ½α̌₁")?;
    ensure(!is_connected(&s).map_err(|e| e.to_string())?, "the normalizer datum is reported connected")
}

fn criterion_4() -> Outcome {
    let s = common::fixture("g2_doubled");
    let s0 = identity_component_datum(&s).map_err(|e| e.to_string())?;
    ensure(datum_equal(&s0, &s), "identity component is not a fixed point")?;
    ensure(is_connected(&s).map_err(|e| e.to_string())?, "not connected")?;
    let colors = full_colors(&s).map_err(|e| e.to_string())?;
    ensure(colors.len() == 2, "expected two colors")?;
    let two_a1 = to_q(&root(&s, &[2, 0]));
    let two_a2 = to_q(&root(&s, &[0, 2]));
    let d1 = colors.iter().find(|c| c.moved == BTreeSet::from([0])).ok_or("no color moved by α₁")?;
    let d2 = colors.iter().find(|c| c.moved == BTreeSet::from([1])).ok_or("no color moved by α₂")?;
    ensure(s.pair(&d1.rho, &two_a2).unwrap() == rat(-3), "⟨ρ(D₁), 2α₂⟩ ≠ −3")?;
    ensure(s.pair(&d2.rho, &two_a1).unwrap() == rat(-1), "⟨ρ(D₂), 2α₁⟩ ≠ −1")
}

fn criterion_5() -> Outcome {
    let s = common::fixture("sl2sl2_simple");
    ensure(!is_connected(&s).map_err(|e| e.to_string())?, "reported connected")?;
    let s0 = identity_component_datum(&s).map_err(|e| e.to_string())?;
    let g = s.group();
    let alpha = g.simple_root(0);
    let half_sum: QVec = alpha.iter().zip(g.simple_root(1)).map(|(a, b)| (a + b) / rat(2)).collect();
    let expected = Sublattice::from_rational_generators(2, &[half_sum, alpha]).unwrap();
    ensure(s0.lattice() == &expected, "ℳ° ≠ ℤ·½(α+α') ⊕ ℤα")?;
    ensure(s0.lattice().basis() == [zvec(&[1, 1]), zvec(&[0, 2])], "canonical basis of ℳ° is not {(1,1), (0,2)}")?;
    ensure(sigma_set(&s0) == sigma_set(&s), "Σ° ≠ Σ")
}

/// `(ℳ, Σ, Sᵖ, 𝒟ᵃ)` in root coordinates.
fn abstract_form(s: &LunaDatum) -> (Vec<QVec>, Vec<QVec>, BTreeSet<usize>, usize) {
    let g = s.group();
    let rc = |x: &ZVec| g.root_coefficients(&to_q(x)).unwrap();
    (s.lattice().basis().iter().map(rc).collect(), s.sigma().iter().map(rc).collect(), s.sp().clone(), s.da().len())
}

fn criterion_6() -> Outcome {
    let adjoint = common::fixture("pgl2pgl2_sum");
    let sc = parse_datum(&common::fixture_text("pgl2pgl2_sum").replace("PGL2xPGL2", "SL2xSL2")).unwrap();
    ensure(validate(&sc).is_empty(), "simply connected version is not valid")?;
    ensure(abstract_form(&adjoint) == abstract_form(&sc), "abstract data differ")?;
    ensure(is_connected(&adjoint).map_err(|e| e.to_string())?, "adjoint ambient: not connected")?;
    ensure(!is_connected(&sc).map_err(|e| e.to_string())?, "simply connected ambient: connected")?;
    let closure = d_closure(&sc, sc.lattice()).map_err(|e| e.to_string())?;
    let g = sc.group();
    let half: QVec = g.simple_root(0).iter().zip(g.simple_root(1)).map(|(a, b)| (a + b) / rat(2)).collect();
    ensure(closure == Sublattice::from_rational_generators(2, &[half]).unwrap(), "saturation ≠ ℤ(α+α')/2")
}

fn criterion_7() -> Outcome {
    let s = common::fixture("spin5_full_rank");
    let mt = Sublattice::from_generators(2, &[root(&s, &[0, 2])]).unwrap();
    let d1 = BTreeSet::from(["D+a1".to_string()]);
    let check = check_pair(&s, &mt, &d1).map_err(|e| e.to_string())?;
    ensure(check.distinguished, "pair is not distinguished")?;
    // ℤα₂ is the saturation of ℤ2α₂ in ℳ.
    let sat = Sublattice::from_generators(2, &[root(&s, &[0, 1])]).unwrap();
    ensure(mt.saturation_in(s.lattice()).unwrap() == sat && sat != mt, "ℳ̃ is saturated")?;
    ensure(!d1.is_empty(), "𝒟¹ is empty")
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    for (name, s) in common::all_fixtures() {
        for f in common::invariant_failures(&s, 4) {
            failures.push(format!("{name}: {f}"));
        }
    }
    let data = common::random_valid_data(20240611, 200);
    ensure(data.len() == 200, "fewer than 200 random data")?;
    for (i, s) in data.iter().enumerate() {
        for f in common::invariant_failures(s, 2) {
            failures.push(format!("random #{i}: {f}"));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_9() -> Outcome {
    let count = |name: &str| spherical_roots_of_group(&RootDatum::preset(name).unwrap()).len();
    for (name, n) in [("SL2", 2), ("SL2xSL2", 6), ("PGL2xPGL2", 5), ("G2", 7), ("Spin7", 15)] {
        ensure(count(name) == n, &format!("|Σ_G| for {name} is {} not {n}", count(name)))?;
    }
    // Root coefficients of the fifteen spherical roots of Spin7.
    let g = Arc::new(RootDatum::preset("Spin7").unwrap());
    let found: BTreeSet<QVec> =
        spherical_roots_of_group(&g).iter().map(|m| g.root_coefficients(&to_q(&m.gamma)).unwrap()).collect();
    let h = ratio(1, 2);
    let w = |a: i64, b: i64, c: i64| vec![rat(a), rat(b), rat(c)];
    let expected = BTreeSet::from([
        w(1, 0, 0),
        w(0, 1, 0),
        w(0, 0, 1),
        w(2, 0, 0),
        w(0, 2, 0),
        w(0, 0, 2),
        w(1, 0, 1),
        vec![h.clone(), rat(0), h.clone()],
        w(1, 1, 0),
        w(0, 1, 1),
        w(0, 2, 2),
        w(1, 1, 1),
        w(2, 2, 2),
        w(1, 2, 3),
        vec![h, rat(1), ratio(3, 2)],
    ]);
    ensure(found == expected, "Spin7 list differs from the hand-derived list")
}

fn criterion_10() -> Outcome {
    let s = common::fixture("spin5_full_rank");
    let found = enumerate_finite_subdata(&s, 2).map_err(|e| e.to_string())?;
    let lattices: BTreeSet<Sublattice> = found.iter().map(|x| x.datum.lattice().clone()).collect();
    // In the basis (α₁, α₂) the index-2 sublattices are {2a, b}, {a, 2b} and
    // {a + b even}. With Σ⁺ = {α₂}, only the one replacing α₂ by 2α₂ keeps
    // every new spherical root of the form 2γ with γ ∈ Σ⁺.
    let a1 = root(&s, &[1, 0]);
    let a2 = root(&s, &[0, 1]);
    let two = |x: &ZVec| x.iter().map(|c| c * 2).collect::<ZVec>();
    let sum = a1.iter().zip(&a2).map(|(x, y)| x + y).collect::<ZVec>();
    let candidates = [
        (Sublattice::from_generators(2, &[two(&a1), a2.clone()]).unwrap(), false),
        (Sublattice::from_generators(2, &[a1.clone(), two(&a2)]).unwrap(), true),
        (Sublattice::from_generators(2, &[sum, two(&a2)]).unwrap(), false),
    ];
    ensure(s.lattice().sublattices_of_index(2).len() == 3, "ℳ does not have three index-2 sublattices")?;
    let mut expected = BTreeSet::from([s.lattice().clone()]);
    for (l, keep) in candidates {
        if keep {
            expected.insert(l);
        }
    }
    ensure(found.len() == 2 && lattices == expected, "result is not {ℳ, ℤα₁ ⊕ ℤ2α₂}")
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Spin7 example: valid, connected, identity component is the input", criterion_1),
        ("Spin7 example: normalizer datum equals the second Spin7 example", criterion_2),
        ("Spin7 normalizer: identity component and disconnectedness", criterion_3),
        ("G2 example: fixed point, connected, color pairings", criterion_4),
        ("SL2xSL2 example: disconnected, lattice of the identity component", criterion_5),
        ("PGL2xPGL2 versus SL2xSL2: connectedness depends on the ambient", criterion_6),
        ("Spin5 pair (Z2a2, {D+a1}) is distinguished but of neither special kind", criterion_7),
        ("property suite on fixtures and 200 random valid data", criterion_8),
        ("spherical roots of SL2, SL2xSL2, PGL2xPGL2, G2, Spin7", criterion_9),
        ("finite-index subdata of Spin5 up to index 2", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {title}  ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {title}  ({ms} ms): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
