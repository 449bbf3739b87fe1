//! Acceptance run: one line per criterion, exact comparisons throughout.

use curalg::catobjects::{Catalog, FamilyKind, FamilyTag};
use curalg::charring::{char_dual, combine, dominant_up_to_height, GradedCharacter, TruncationSpec, Window};
use curalg::linalg::{to_i64, Q};
use curalg::modengine::isomorphic_indecomposables;
use curalg::orders::{covering_leq, lex_leq, psi_distance, psi_face_check, psi_leq, LamPoint, PsiFace};
use curalg::rootdata::{CartanType, RootSystem, Weight};
use curalg::tilting::{
    bgg_check, build_eta, build_s_set, build_tilting, ext_vanish_predicate, trivial_tilting_check, verify_certificate,
    verify_enumeration, TrivialOrder, Vanishing,
};
use std::process::ExitCode;
use std::time::Instant;

type Outcome = Result<String, String>;

fn a1_weights(max: i64) -> Vec<Weight> {
    (0..=max).map(|k| Weight(vec![k])).collect()
}

fn pt(w: &Weight, g: i64) -> LamPoint {
    LamPoint::new(w.clone(), g)
}

fn tag(kind: FamilyKind, w: &Weight, r: i64, spec: &TruncationSpec) -> FamilyTag {
    FamilyTag::new(kind, w.clone(), r, spec.clone())
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn specs_c2() -> Vec<TruncationSpec> {
    vec![TruncationSpec::finite(0, 0), TruncationSpec::finite(0, 1), TruncationSpec::finite(0, 2)]
}

fn criterion1() -> Outcome {
    let mut checked = 0;
    for kind in [CartanType::A1, CartanType::A2, CartanType::A3, CartanType::C2] {
        let rs = RootSystem::new(kind);
        if let Err(t) = rs.check_jacobi() {
            return Err(format!("{}: Jacobi fails on basis triple {t:?}", rs.label()));
        }
        for lam in dominant_up_to_height(&rs, &Q::from_integer(4.into())) {
            let total: i64 = rs.weyl_character(&lam).values().sum();
            let d = to_i64(&rs.weyl_dimension(&lam)).unwrap();
            if total != d {
                return Err(format!("{}: character of V({lam}) has dimension {total}, formula gives {d}", rs.label()));
            }
            checked += 1;
        }
    }
    Ok(format!("Jacobi on 4 types, {checked} characters"))
}

fn criterion2(cat: &mut Catalog) -> Outcome {
    let mut n = 0;
    for spec in specs_c2() {
        for lam in a1_weights(4) {
            for r in spec.grades().map_err(e)? {
                for kind in [FamilyKind::Delta, FamilyKind::GlobalWeyl, FamilyKind::Proj, FamilyKind::Nabla] {
                    let t = tag(kind, &lam, r, &spec);
                    for c in cat.verify(&t).map_err(e)? {
                        if !c.holds {
                            return Err(format!("{t}: {}", c.name));
                        }
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} builds verified"))
}

fn criterion3(cat: &mut Catalog) -> Outcome {
    let rs = cat.rs.clone();
    let mut n = 0;
    for spec in specs_c2() {
        for lam in a1_weights(4) {
            for r in spec.grades().map_err(e)? {
                let nabla = cat.character(&tag(FamilyKind::Nabla, &lam, r, &spec), None).map_err(e)?;
                let w = cat
                    .character(&tag(FamilyKind::GlobalWeyl, &rs.minus_w0(&lam), -r, &spec.reflected()), None)
                    .map_err(e)?;
                if nabla.terms != char_dual(&w).terms {
                    return Err(format!("Nabla({lam},{r}) over {spec}"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn criterion4() -> Outcome {
    let mut n = 0;
    for kind in [CartanType::A1, CartanType::A2] {
        let rs = RootSystem::new(kind);
        let mut cat = Catalog::new(rs.clone());
        let spec = TruncationSpec::finite(-1, 2);
        let weights = dominant_up_to_height(&rs, &Q::from_integer(3.into()));
        for lam in &weights {
            let src = tag(FamilyKind::Simple, lam, 0, &spec);
            for mu in &weights {
                for s in -1..=2 {
                    let target = cat.build(&tag(FamilyKind::Simple, mu, s, &spec)).map_err(e)?;
                    let got = cat.ext1_dim(&src, &target).map_err(e)? as i64;
                    let want = if s == 1 { rs.hom_to_adjoint_tensor(lam, mu) } else { 0 };
                    if got != want {
                        return Err(format!("{}: Ext^1(V({lam},0), V({mu},{s})) = {got}, expected {want}", rs.label()));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn ext_zero(
    cat: &mut Catalog,
    spec: &TruncationSpec,
    src: FamilyKind,
    a: (&Weight, i64),
    dst: FamilyKind,
    b: (&Weight, i64),
    n: &mut usize,
) -> Result<bool, String> {
    let target = cat.build(&tag(dst, b.0, b.1, spec)).map_err(e)?;
    *n += 1;
    Ok(cat.ext1_dim(&tag(src, a.0, a.1, spec), &target).map_err(e)? == 0)
}

fn criterion5(cat: &mut Catalog) -> Outcome {
    let rs = cat.rs.clone();
    let mut n = 0;
    let mut strict_extra = 0;
    for spec in specs_c2() {
        let grades = spec.grades().map_err(e)?;
        let weights = a1_weights(4);
        for lam in &weights {
            for &r in &grades {
                for mu in &weights {
                    for &s in &grades {
                        let mut zero = |src, a, dst, b| ext_zero(cat, &spec, src, a, dst, b, &mut n);
                        if !zero(FamilyKind::Delta, (lam, r), FamilyKind::Nabla, (mu, s))? {
                            return Err(format!("Ext^1(Delta({lam},{r}), Nabla({mu},{s})) != 0 over {spec}"));
                        }
                        if !rs.dominance_lt(lam, mu) {
                            let ww = zero(FamilyKind::GlobalWeyl, (lam, r), FamilyKind::GlobalWeyl, (mu, s))?;
                            let nn = zero(FamilyKind::Nabla, (mu, s), FamilyKind::Nabla, (lam, r))?;
                            if !(ww && nn) {
                                return Err(format!("W and Nabla vanishing fails at ({lam},{r}), ({mu},{s}) over {spec}"));
                            }
                            if lam == mu {
                                strict_extra += 1;
                            }
                        }
                        if !rs.dominance_leq(lam, mu) && !zero(FamilyKind::Delta, (lam, r), FamilyKind::Delta, (mu, s))? {
                            return Err(format!("Delta vanishing for incomparable weights fails at ({lam},{r}), ({mu},{s}) over {spec}"));
                        }
                    }
                    if lam == mu {
                        for &s in &grades {
                            if s >= r && !ext_zero(cat, &spec, FamilyKind::Delta, (lam, s), FamilyKind::Delta, (lam, r), &mut n)? {
                                return Err(format!("Delta vanishing at equal weights fails at {lam}, s={s}, r={r} over {spec}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{n} Ext groups, {strict_extra} of them at equal weights"))
}

fn criterion6() -> Outcome {
    let rs = RootSystem::new(CartanType::A1);
    let mut cat = Catalog::new(rs);
    let spec = TruncationSpec::finite(0, 1).with_cap(Weight(vec![4]));
    let rep = bgg_check(&mut cat, &spec).map_err(e)?;
    let conventions = format!(
        "P side: same={} swapped={}; I side: same={} swapped={}",
        rep.proj_same, rep.proj_swapped, rep.inj_same, rep.inj_swapped
    );
    if !rep.holds() {
        return Err(conventions);
    }
    let lam = pt(&Weight(vec![2]), 0);
    let mut proj: Vec<(LamPoint, i64)> =
        rep.entries.iter().filter(|x| x.lambda == lam && x.proj_weyl != 0).map(|x| (x.mu.clone(), x.proj_weyl)).collect();
    proj.sort();
    let want = vec![(pt(&Weight(vec![2]), 0), 1), (pt(&Weight(vec![4]), 1), 1)];
    if proj != want {
        return Err(format!("P(2w1,0) multiplicities {proj:?}"));
    }
    let inst = rep.entries.iter().find(|x| x.lambda == lam && x.mu == pt(&Weight(vec![4]), 1)).ok_or("missing entry")?;
    if inst.swapped_grades != 1 {
        return Err(format!("[Delta(4w1,0):V(2w1,1)] = {}", inst.swapped_grades));
    }
    Ok(conventions)
}

fn criterion7() -> Outcome {
    let rs = RootSystem::new(CartanType::A1);
    let mut cat = Catalog::new(rs.clone());
    let spec = TruncationSpec::finite(0, 1);
    let mut built = Vec::new();
    for lam in a1_weights(2) {
        for r in 0..=1 {
            let anchor = pt(&lam, r);
            let run = build_tilting(&mut cat, &spec, &anchor).map_err(e)?;
            verify_certificate(&mut cat, &run.module, &run.certificate).map_err(e)?;
            let mults = run.certificate.delta_multiplicities.iter().map(|(p, k)| ((p.weight.clone(), p.grade), *k)).collect();
            let ch = combine(&mults, Window::finite(0, 1), |mu, s| {
                cat.character(&tag(FamilyKind::Delta, mu, s, &spec), None)
            })
            .map_err(e)?;
            if ch.terms != run.module.character().terms {
                return Err(format!("T{anchor}: Delta multiplicities do not reproduce the character"));
            }
            built.push((anchor, run.module));
        }
    }
    for i in 0..built.len() {
        for j in i + 1..built.len() {
            if isomorphic_indecomposables(&built[i].1, &built[j].1) {
                return Err(format!("T{} and T{} are isomorphic", built[i].0, built[j].0));
            }
        }
    }
    let dims: Vec<String> = built.iter().map(|(a, m)| format!("{a}:{}", m.dim())).collect();
    Ok(format!("dims {}", dims.join(" ")))
}

fn criterion8() -> Outcome {
    let rs = RootSystem::new(CartanType::A1);
    let mut cat = Catalog::new(rs.clone());
    let mut n = 0;
    for r in [0, 1] {
        let spec = TruncationSpec::finite(r, r);
        for lam in a1_weights(4) {
            let run = build_tilting(&mut cat, &spec, &pt(&lam, r)).map_err(e)?;
            let v = cat.build(&tag(FamilyKind::Simple, &lam, r, &spec)).map_err(e)?;
            let want = GradedCharacter::simple(&rs, &lam, r, Window::ALL);
            if run.module.character().terms != want.terms || !isomorphic_indecomposables(&run.module, &v) {
                return Err(format!("T({lam},{r}) over [{r},{r}] is not V({lam},{r})"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} anchors"))
}

fn criterion9() -> Outcome {
    let rs = RootSystem::new(CartanType::A1);
    let mut cat = Catalog::new(rs.clone());
    let mut pairs = 0;
    let cases = [(TruncationSpec::finite(0, 1), vec![0, 1], None), (TruncationSpec::parse("-inf:0").map_err(e)?, vec![0], Some(-3))];
    for (spec, grades, lo) in cases {
        for lam in a1_weights(2) {
            for &r in &grades {
                let anchor = pt(&lam, r);
                let ss = build_s_set(&mut cat, &spec, &anchor).map_err(e)?;
                let eta = build_eta(&ss, lo).map_err(e)?;
                let rep = verify_enumeration(&mut cat, &ss, &eta, lo).map_err(e)?;
                if !rep.holds() {
                    return Err(format!("S{anchor} over {spec}: {:?}", rep.failures));
                }
                pairs += rep.pairs;
                // Ext^1(Delta(outside), Delta(inside)) = 0 for weights up to 4w1
                let low = lo.or(spec.a).unwrap();
                for inside in ss.members(lo).map_err(e)? {
                    let target = cat.build(&tag(FamilyKind::Delta, &inside.weight, inside.grade, &spec)).map_err(e)?;
                    for mu in a1_weights(4) {
                        for s in low..=spec.b.unwrap() {
                            let out = pt(&mu, s);
                            if ss.contains(&out) {
                                continue;
                            }
                            if ext_vanish_predicate(&rs, &out, &inside, Some(&ss)) == Vanishing::GuaranteedZero {
                                continue;
                            }
                            let d = cat.ext1_dim(&tag(FamilyKind::Delta, &mu, s, &spec), &target).map_err(e)?;
                            if d != 0 {
                                return Err(format!("S{anchor}: Ext^1(Delta{out}, Delta{inside}) = {d}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs"))
}

fn criterion10() -> Outcome {
    let rs = RootSystem::new(CartanType::A1);
    let points: Vec<LamPoint> = a1_weights(4).iter().flat_map(|w| (-2..=2).map(move |g| pt(w, g))).collect();
    let alpha = Weight(vec![2]);
    let faces: Vec<PsiFace> = [vec![alpha.clone()], vec![alpha.neg()], vec![]]
        .into_iter()
        .map(|p| PsiFace::adjoint(&rs, p).unwrap())
        .filter(|f| psi_face_check(f).holds)
        .collect();
    type Leq<'a> = Box<dyn Fn(&LamPoint, &LamPoint) -> bool + 'a>;
    let mut orders: Vec<(String, Leq)> = vec![
        ("lex".into(), Box::new(|p, q| lex_leq(&rs, p, q))),
        ("covering".into(), Box::new(|p, q| covering_leq(&rs, p, q))),
    ];
    for f in &faces {
        orders.push((format!("psi{:?}", f.psi), Box::new(move |p, q| psi_leq(p, q, f).unwrap())));
    }
    for (name, leq) in &orders {
        for p in &points {
            if !leq(p, p) {
                return Err(format!("{name} is not reflexive at {p}"));
            }
            for q in &points {
                if p != q && leq(p, q) && leq(q, p) {
                    return Err(format!("{name} is not antisymmetric at {p}, {q}"));
                }
                if !leq(p, q) {
                    continue;
                }
                for x in &points {
                    if leq(q, x) && !leq(p, x) {
                        return Err(format!("{name} is not transitive at {p}, {q}, {x}"));
                    }
                }
            }
        }
    }
    let weights: Vec<Weight> = (-4..=4).map(|k| Weight(vec![k])).collect();
    for f in &faces {
        for a in &weights {
            for b in &weights {
                for c in &weights {
                    let d = |x: &Weight, y: &Weight| psi_distance(x, y, f).unwrap();
                    if let (Some(x), Some(y)) = (d(a, b), d(b, c)) {
                        if d(a, c) != Some(x + y) {
                            return Err(format!("d_Psi is not additive at {a}, {b}, {c} for {:?}", f.psi));
                        }
                    }
                }
            }
        }
        for p in &points {
            for q in &points {
                if psi_leq(p, q, f).unwrap() && !covering_leq(&rs, p, q) {
                    return Err(format!("psi{:?} does not refine the covering order at {p}, {q}", f.psi));
                }
            }
        }
    }
    Ok(format!("{} orders on {} points", orders.len(), points.len()))
}

fn criterion11() -> Outcome {
    let rs = RootSystem::new(CartanType::A1);
    let mut cat = Catalog::new(rs.clone());
    let spec = TruncationSpec::finite(0, 1).with_cap(Weight(vec![4]));
    let face = PsiFace::adjoint(&rs, vec![Weight(vec![2])]).map_err(e)?;
    let mut summary = Vec::new();
    for order in [TrivialOrder::Covering, TrivialOrder::Psi(face)] {
        let rep = trivial_tilting_check(&mut cat, &spec, &order).map_err(e)?;
        if !rep.holds() {
            let first = rep.gammas.iter().flat_map(|g| g.failures.iter()).next().cloned().unwrap_or_default();
            return Err(format!("{}: {first}", rep.order));
        }
        summary.push(format!("{} ({} Gamma)", rep.order, rep.gammas.len()));
    }
    Ok(summary.join(", "))
}

fn main() -> ExitCode {
    let a1 = RootSystem::new(CartanType::A1);
    let mut cat = Catalog::new(a1);
    let mut all = true;
    let mut run = |n: usize, title: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let res = f();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {n:>2} PASS  {title}: {msg} [{secs:.1}s]"),
            Err(msg) => {
                all = false;
                println!("criterion {n:>2} FAIL  {title}: {msg} [{secs:.1}s]");
            }
        }
    };
    run(1, "Lie algebra soundness", &mut criterion1);
    run(2, "module axioms", &mut || criterion2(&mut cat));
    run(3, "duality", &mut || criterion3(&mut cat));
    run(4, "Ext between simples", &mut criterion4);
    run(5, "homological vanishing", &mut || criterion5(&mut cat));
    run(6, "BGG reciprocity", &mut criterion6);
    run(7, "tilting construction", &mut criterion7);
    run(8, "single-grade tilting", &mut criterion8);
    run(9, "S and eta", &mut criterion9);
    run(10, "order laws", &mut criterion10);
    run(11, "trivial tilting theories", &mut criterion11);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
