//! Acceptance suite: one PASS/FAIL line per criterion, exact equality only.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{
    cone, example_fan, example_fan_triangulated, rand_rat, random_complete_fan_2d, random_divisor, random_gram,
    random_smooth_cone, rng, series2, triangle_fan,
};
use eqtodd_core::polytope::{cone_germ, GermKind, DEFAULT_BUDGET};
use eqtodd_core::todd::{r_closed_1d, r_closed_2d, todd_product};
use eqtodd_core::{
    act, int, jpsi_generators, stanley_reisner_generators, Cone, DPoly, EquivariantCycle, EquivariantDivisor, Fan,
    InnerProduct, LatticePolytope, LinearForm, MeromorphicGerm, PolySeries, Rational, SquarefreeReducer, ToddEngine,
};
use rand::seq::SliceRandom;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

// 1 -------------------------------------------------------------------------

fn action_formulas(alpha: &[Rational]) -> Result<(), String> {
    let fan = example_fan();
    let g = InnerProduct::identity(3);
    let d = EquivariantDivisor::new(&fan, alpha.to_vec()).map_err(err)?;
    let t = 2;
    let id = |r: &[usize]| fan.cone_id(r).unwrap();
    let c = |a: Rational| PolySeries::constant(3, t, a);
    let m = |i: usize| PolySeries::variable(3, t, i);
    let a = alpha;
    let run = |sigma: usize| act(&fan, &g, &d, &EquivariantCycle::basis(3, sigma, t)).map_err(err);

    let mut e0 = EquivariantCycle::zero(3);
    for i in 0..5 {
        e0.add_term(id(&[i]), c(a[i].clone()));
    }
    let mut e1 = EquivariantCycle::zero(3);
    e1.add_term(id(&[0, 2]), c(a[2].clone()));
    e1.add_term(id(&[0, 3]), c(&a[3] - &a[0]));
    e1.add_term(id(&[0, 4]), c(&a[0] + &a[4]));
    e1.add_term(id(&[0]), m(0).scale(&a[0]));
    let mut e13 = EquivariantCycle::zero(3);
    e13.add_term(id(&[0, 1, 2, 3]), c(a[1].clone()));
    e13.add_term(id(&[0, 2, 4]), c(&a[4] + &a[0]));
    e13.add_term(id(&[0, 2]), &m(0).scale(&a[0]) + &m(2).scale(&a[2]));
    let top = id(&[0, 1, 2, 3]);
    let e1234 = EquivariantCycle::single(top, &(&m(0).scale(&a[0]) + &m(1).scale(&a[1])) + &m(2).scale(&a[2]));

    for (sigma, expected, name) in [(0, e0, "D.V"), (id(&[0]), e1, "D.V1"), (id(&[0, 2]), e13, "D.V13"), (top, e1234, "D.V1234")] {
        let got = run(sigma)?;
        ensure(got == expected, || format!("{name} mismatch for alpha {alpha:?}"))?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let mut r = rng(101);
    let mut alphas: Vec<Vec<Rational>> = vec![[1, 2, 3, 0, 5].iter().map(|&x| int(x)).collect()];
    for _ in 0..2 {
        let mut a: Vec<Rational> = (0..5).map(|_| rand_rat(&mut r, 7)).collect();
        a[3] = &a[0] + &a[1] - &a[2];
        alphas.push(a);
    }
    for a in &alphas {
        action_formulas(a)?;
    }
    Ok(format!("{} divisors, 4 cycles each", alphas.len()))
}

// 2, 3 ----------------------------------------------------------------------

fn printed_vertex_series() -> [(Cone, PolySeries); 3] {
    [
        (cone(&[&[0, 1], &[1, 0]]), series2(&[(&[0, 0], 1, 4), (&[1, 0], 1, 24), (&[0, 1], 1, 24), (&[1, 1], 1, 144)], 2)),
        (
            cone(&[&[-1, -1], &[0, 1]]),
            series2(
                &[(&[0, 0], 3, 8), (&[1, 0], -1, 12), (&[0, 1], 1, 24), (&[2, 0], 5, 1152), (&[1, 1], -1, 288), (&[0, 2], -5, 1152)],
                2,
            ),
        ),
        (
            cone(&[&[1, 0], &[-1, -1]]),
            series2(
                &[(&[0, 0], 3, 8), (&[1, 0], 1, 24), (&[0, 1], -1, 12), (&[2, 0], -5, 1152), (&[1, 1], -1, 288), (&[0, 2], 5, 1152)],
                2,
            ),
        ),
    ]
}

fn criterion_2() -> Outcome {
    let g = InnerProduct::identity(2);
    let mut eng = ToddEngine::new(g.clone(), 2);
    for (i, (c, expected)) in printed_vertex_series().iter().enumerate() {
        let ring = eng.r_smooth(c).map_err(err)?;
        ensure(&ring == expected, || format!("ring path, vertex cone {i}: got {ring}"))?;
        let closed = r_closed_2d(&g, c, 2).map_err(err)?;
        ensure(&closed == expected, || format!("closed form, vertex cone {i}: got {closed}"))?;
    }
    // the same coefficients inside the whole triangle fan
    let fan = triangle_fan();
    let td = eng.todd_class(&fan).map_err(err)?;
    for (c, expected) in printed_vertex_series() {
        let rays: Vec<usize> = c.generators().iter().map(|v| fan.rays().iter().position(|r| r == v).unwrap()).collect();
        let id = fan.cone_id(&rays).unwrap();
        ensure(td.coeff(id, 2) == expected, || format!("whole-fan expansion at {}", fan.label(id)))?;
    }
    Ok("3 vertex cones, ring + closed form + whole fan, order 2".into())
}

fn criterion_3() -> Outcome {
    let mut eng = ToddEngine::new(InnerProduct::identity(2), 6);
    let mut total = PolySeries::zero(2, 6);
    for (c, _) in printed_vertex_series() {
        total = &total + &eng.r_smooth(&c).map_err(err)?;
    }
    ensure(total == PolySeries::one(2, 6), || format!("sum = {total}"))?;
    Ok("sum of vertex coefficients = 1 through order 6".into())
}

// 4, 5 ----------------------------------------------------------------------

fn corpus() -> Vec<(&'static str, LatticePolytope, u32, i64)> {
    let p = |rank: usize, v: &[&[i64]]| LatticePolytope::new(rank, v.iter().map(|x| x.to_vec()).collect(), None).unwrap();
    let cube: Vec<Vec<i64>> = (0..8).map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect();
    vec![
        ("unit triangle", p(2, &[&[0, 0], &[1, 0], &[0, 1]]), 6, 3),
        ("2x triangle", p(2, &[&[0, 0], &[2, 0], &[0, 2]]), 4, 6),
        ("unit square", p(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), 4, 4),
        ("[0,2]^2", p(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]), 4, 9),
        ("conv{(0,0),(2,1),(1,2)}", p(2, &[&[0, 0], &[2, 1], &[1, 2]]), 4, 4),
        ("unit cube", LatticePolytope::new(3, cube, None).unwrap(), 4, 8),
    ]
}

fn criterion_4() -> Outcome {
    let mut names = Vec::new();
    for (name, poly, order, _) in corpus() {
        let mut eng = ToddEngine::new(InnerProduct::identity(poly.rank()), order);
        let em = poly.euler_maclaurin_series(&mut eng).map_err(err)?;
        let sum = poly.exp_sum_series(order, DEFAULT_BUDGET).map_err(err)?;
        ensure(em == sum, || format!("{name}: EM {em} vs sum {sum}"))?;
        names.push(format!("{name}@{order}"));
    }
    // the triangle target is 1 + e^x + e^y
    let tri = &corpus()[0].1;
    let target = &(&PolySeries::one(2, 6) + &eqtodd_core::series::exp_linear(&LinearForm::from_ints(&[1, 0]), 6))
        + &eqtodd_core::series::exp_linear(&LinearForm::from_ints(&[0, 1]), 6);
    ensure(tri.exp_sum_series(6, DEFAULT_BUDGET).map_err(err)? == target, || "triangle sum is not 1+e^x+e^y".into())?;
    Ok(names.join(", "))
}

fn criterion_5() -> Outcome {
    let mut out = Vec::new();
    for (name, poly, _, expected) in corpus() {
        let mut eng = ToddEngine::new(InnerProduct::identity(poly.rank()), 0);
        let c = poly.count_lattice_points(&mut eng, DEFAULT_BUDGET).map_err(err)?;
        ensure(c.euler_maclaurin == int(expected) && c.enumeration == expected as u64, || {
            format!("{name}: EM={}, enumeration={}, expected {expected}", c.euler_maclaurin, c.enumeration)
        })?;
        out.push(format!("{name}={expected}"));
    }
    Ok(out.join(", "))
}

// 6 -------------------------------------------------------------------------

fn criterion_6() -> Outcome {
    let mut r = rng(106);
    let order = 5;
    let mut checked = 0;
    for i in 0..25 {
        let n = if i < 13 { 2 } else { 3 };
        let g = random_gram(&mut r, n);
        let c = random_smooth_cone(&mut r, n, 2);
        let mut eng = ToddEngine::new(g.clone(), order);
        let ring = eng.r_smooth(&c).map_err(err)?;
        let closed = r_closed_2d(&g, &c, order).map_err(err)?;
        ensure(ring == closed, || format!("2D cone {:?} in Z^{n}", c.generators()))?;
        checked += 1;
    }
    for i in 0..10 {
        let n = if i < 5 { 2 } else { 3 };
        let g = random_gram(&mut r, n);
        let c = random_smooth_cone(&mut r, n, 1);
        let mut eng = ToddEngine::new(g.clone(), order);
        let ring = eng.r_smooth(&c).map_err(err)?;
        let closed = r_closed_1d(&g, &c.generators()[0], order).map_err(err)?;
        ensure(ring == closed, || format!("ray {:?} in Z^{n}", c.generators()))?;
        let zero = eng.r_smooth(&Cone::zero(n)).map_err(err)?;
        ensure(zero == PolySeries::one(n, order), || "zero cone".into())?;
        checked += 1;
    }
    Ok(format!("{checked} cones, random Gram matrices, order {order}"))
}

// 7 -------------------------------------------------------------------------

fn criterion_7() -> Outcome {
    let mut r = rng(107);
    let mut min_eff = i64::MAX;
    for i in 0..10 {
        let n = if i < 5 { 2 } else { 3 };
        let c = random_smooth_cone(&mut r, n, n);
        let g = if i % 2 == 0 { InnerProduct::identity(n) } else { random_gram(&mut r, n) };
        let order = n as u32 + 4;
        let mut eng = ToddEngine::new(g, order);
        let k = c.dual().map_err(err)?;
        // dual basis: m_i pairs to δ_ij with the generators
        let gens = c.generators().to_vec();
        let dual: Vec<Vec<i64>> = (0..n)
            .map(|i| k.generators().iter().find(|m| (0..n).all(|j| eqtodd_core::linalg::dot_int(m, &gens[j]) == i64::from(i == j))).cloned().unwrap())
            .collect();
        let negate: Vec<LinearForm> = (0..n).map(|i| LinearForm::unit(n, i)).collect();
        let mut lhs = MeromorphicGerm::from_series(PolySeries::zero(n, order));
        for face in c.faces() {
            let tau = c.sub_cone(&face);
            let rt = eng.r_smooth(&tau).map_err(err)?;
            let kt: Vec<Vec<i64>> = (0..n).filter(|i| !face.contains(i)).map(|i| dual[i].clone()).collect();
            let i_germ = cone_germ(n, &kt, GermKind::I, order).map_err(err)?.substitute(&negate, n, true).map_err(err)?;
            lhs = lhs.add(&MeromorphicGerm::from_series(rt).mul(&i_germ).map_err(err)?).map_err(err)?;
        }
        let rhs = cone_germ(n, &dual, GermKind::S, order).map_err(err)?.substitute(&negate, n, true).map_err(err)?;
        let eff = lhs.effective_order().min(rhs.effective_order());
        min_eff = min_eff.min(eff);
        ensure(eff >= 4, || format!("effective order {eff}"))?;
        ensure(lhs.equals(&rhs).map_err(err)?, || format!("germ identity fails for {:?}", c.generators()))?;
    }
    Ok(format!("10 cones (5 in Z^2, 5 in Z^3), effective order >= {min_eff}"))
}

// 8 -------------------------------------------------------------------------

fn criterion_8() -> Outcome {
    let mut eng = ToddEngine::new(InnerProduct::identity(2), 6);
    let s = cone(&[&[1, 0], &[1, 2]]);
    let minimal = s.subdivide_to_smooth().map_err(err)?;
    ensure(minimal.len() == 2, || format!("resolution has {} pieces", minimal.len()))?;
    let a = eng.r_sum(&minimal).map_err(err)?;
    let refined = [cone(&[&[1, 0], &[2, 1]]), cone(&[&[2, 1], &[1, 1]]), cone(&[&[1, 1], &[1, 2]])];
    let mut fresh = ToddEngine::new(InnerProduct::identity(2), 6).without_cache();
    let b = fresh.r_sum(&refined).map_err(err)?;
    ensure(a == b, || format!("minimal {a} vs refined {b}"))?;
    ensure(eng.r_general(&s).map_err(err)? == a, || "r_general differs from its resolution".into())?;
    Ok("2-piece and 3-piece subdivisions agree through order 6".into())
}

// 9 -------------------------------------------------------------------------

fn commute_and_lift(fan: &Fan, g: &InnerProduct, d: &EquivariantDivisor, e: &EquivariantDivisor) -> Result<(), String> {
    let n = fan.rank();
    for id in 0..fan.len() {
        let base = EquivariantCycle::basis(n, id, 3);
        let de = act(fan, g, d, &act(fan, g, e, &base).map_err(err)?).map_err(err)?;
        let ed = act(fan, g, e, &act(fan, g, d, &base).map_err(err)?).map_err(err)?;
        ensure(de == ed, || format!("D.(E.V) != E.(D.V) at {}", fan.label(id)))?;
        let plain = act(fan, g, d, &base).map_err(err)?.forget_torus();
        for (k, s) in plain.iter() {
            ensure(k == id || fan.cofaces(id).contains(&k), || format!("M->0 support at {}", fan.label(k)))?;
            ensure(s.terms().all(|(e, _)| e.iter().all(|&x| x == 0)), || "M->0 left a symbol".into())?;
            if k == id {
                return Err(format!("M->0 kept a diagonal term at {}", fan.label(id)));
            }
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let mut r = rng(109);
    let ex = example_fan();
    for i in 0..10 {
        let g = if i % 2 == 0 { InnerProduct::identity(3) } else { random_gram(&mut r, 3) };
        commute_and_lift(&ex, &g, &random_divisor(&mut r, &ex), &random_divisor(&mut r, &ex))?;
    }
    for _ in 0..10 {
        let fan = random_complete_fan_2d(&mut r);
        let g = random_gram(&mut r, 2);
        commute_and_lift(&fan, &g, &random_divisor(&mut r, &fan), &random_divisor(&mut r, &fan))?;
    }
    Ok("20 divisor pairs (10 on the 3D fan, 10 on random complete 2D fans), all cones".into())
}

// 10 ------------------------------------------------------------------------

fn criterion_10() -> Outcome {
    let mut r = rng(110);
    let mut total_gens = 0;
    let mut shuffles = 0;
    for fan in [triangle_fan(), example_fan_triangulated()] {
        let n = fan.rank();
        let s = fan.rays().len();
        let order = 3;
        let g = if n == 2 { InnerProduct::identity(2) } else { random_gram(&mut r, 3) };
        let mut red = SquarefreeReducer::new(&fan, &g, order).map_err(err)?;
        for p in jpsi_generators(&fan, &g, order).map_err(err)? {
            ensure(red.reduce(&p).map_err(err)?.is_zero(), || "a J generator did not reduce to zero".into())?;
            total_gens += 1;
        }
        for sr in stanley_reisner_generators(&fan) {
            let mut e = vec![0; s];
            for i in sr {
                e[i] = 1;
            }
            let p = DPoly::monomial(s, e, PolySeries::one(n, order)).map_err(err)?;
            ensure(red.reduce(&p).map_err(err)?.is_zero(), || "a Stanley-Reisner monomial survived".into())?;
            total_gens += 1;
        }
        let input = todd_product(&fan, n as u32 + order, order);
        let reference = red.reduce(&input).map_err(err)?;
        let mut plain = SquarefreeReducer::new(&fan, &g, order).map_err(err)?.without_memo();
        for _ in 0..50 {
            let mut chooser = |c: &[usize]| *(0..c.len()).collect::<Vec<_>>().choose(&mut r).unwrap();
            let got = plain.reduce_with(&input, &mut chooser).map_err(err)?;
            ensure(got == reference, || format!("shuffled reduction differs on the {n}D fan"))?;
            shuffles += 1;
        }
    }
    Ok(format!("{total_gens} generators reduce to 0; {shuffles} shuffled reductions agree"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("divisor action on the five-ray 3D fan", criterion_1),
        ("triangle vertex Todd series (ring and closed form)", criterion_2),
        ("partition of unity on the triangle fan", criterion_3),
        ("interpolator identity on the polytope corpus", criterion_4),
        ("exact lattice-point counts", criterion_5),
        ("closed forms vs ring expansion, random Gram", criterion_6),
        ("local germ identity for smooth cones", criterion_7),
        ("subdivision independence", criterion_8),
        ("commutativity and M->0 lifting of the action", criterion_9),
        ("ideal generators vanish; reduction is confluent", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let ms = start.elapsed().as_millis();
        match res {
            Ok(detail) => println!("PASS  {:>2}  {name}  [{detail}] ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}  [{detail}] ({ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
