//! A fixed catalog of closed foams per `N`, and seeded random foams drawn
//! from the same families.

use rand::seq::SliceRandom;
use rand::Rng;

use super::relations::{build_relation, close_relation, closure_family, RelationId};
use super::{
    add_handles, build_gen_theta_closed, build_graph_times_circle, build_suspension, build_surface, build_theta,
    disjoint_union, GenThetaDecorations, ZooError,
};
use crate::foamcore::{Decoration, Foam};
use crate::moyflag::MoyGraph;
use crate::schur::{SchurCombo, YoungDiagram};

#[derive(Debug, Clone)]
pub struct ZooFoam {
    pub name: String,
    pub foam: Foam,
}

fn zf(name: impl Into<String>, foam: Foam) -> ZooFoam {
    ZooFoam { name: name.into(), foam }
}

fn combo(label: usize, d: YoungDiagram) -> SchurCombo {
    if d.is_empty() {
        SchurCombo::one(label)
    } else {
        SchurCombo::single(label, d)
    }
}

/// Compositions of `n` into exactly `k` positive parts, lexicographic.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Foams from closing a relation with its first two closures.
fn relation_closures(id: RelationId, params: &[usize], n: usize, out: &mut Vec<ZooFoam>) -> Result<(), ZooError> {
    let rel = build_relation(id, params, n)?;
    let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    for c in closure_family(&rel, 1).into_iter().take(2) {
        let (lhs, rhs) = close_relation(&rel, &c)?;
        for (side, lc) in [("l", lhs), ("r", rhs)] {
            for (k, (_, f)) in lc.terms.into_iter().enumerate() {
                if f.facets.is_empty() {
                    continue;
                }
                out.push(zf(format!("{id}({})/{}/{side}{k}", ps.join(","), c.name), f));
            }
        }
    }
    Ok(())
}

/// The catalog at `N = n`: surfaces, thetas, generalized thetas, `Γ × S¹`,
/// suspensions, closed relation terms and a disjoint union.
pub fn zoo(n: usize) -> Result<Vec<ZooFoam>, ZooError> {
    if n == 0 {
        return Err(ZooError::BadParams("N must be positive".into()));
    }
    let mut out = Vec::new();
    for a in 1..=n {
        out.push(zf(format!("sphere({a})"), build_surface(a, 0, &SchurCombo::one(a), n)?));
        if a < n {
            let d = combo(a, YoungDiagram::rect(a, n - a));
            out.push(zf(format!("sphere({a};top)"), build_surface(a, 0, &d, n)?));
        }
        out.push(zf(format!("torus({a})"), build_surface(a, 1, &SchurCombo::one(a), n)?));
    }
    out.push(zf("genus2(1)", build_surface(1, 2, &SchurCombo::one(1), n)?));

    for a in 1..n {
        for b in 1..=n - a {
            let one = |l| SchurCombo::one(l);
            out.push(zf(format!("theta({a},{b})"), build_theta(a, b, &one(a), &one(b), &one(a + b), n)?));
            let db = combo(b, YoungDiagram::rect(b, a));
            let dab = combo(a + b, YoungDiagram::rect(a + b, n - a - b));
            out.push(zf(format!("theta({a},{b};delta)"), build_theta(a, b, &one(a), &db, &dab, n)?));
        }
    }

    for k in 3..=n.min(4) {
        if let Some(a_vec) = compositions(n, k).into_iter().next() {
            let name = format!("gentheta{a_vec:?}");
            out.push(zf(name, build_gen_theta_closed(&a_vec, &GenThetaDecorations::trivial(k))?));
        }
    }

    for a in 1..=n {
        out.push(zf(format!("circle({a})xS1"), build_graph_times_circle(&MoyGraph::circle(n, a), None)?));
    }
    for a_vec in compositions(n, 2) {
        out.push(zf(format!("theta{a_vec:?}xS1"), build_graph_times_circle(&MoyGraph::theta(&a_vec), None)?));
    }

    if n >= 3 {
        let decs: [Decoration; 6] = Default::default();
        out.push(zf("suspension(1,1,1)", build_suspension(1, 1, 1, &decs, n)?));
        let mut decs: [Decoration; 6] = Default::default();
        decs[0] = Decoration::single(1, YoungDiagram::from_rows(&[1]));
        out.push(zf("suspension(1,1,1;dot)", build_suspension(1, 1, 1, &decs, n)?));
    }

    if n >= 2 {
        relation_closures(RelationId::NeckCutting, &[1], n, &mut out)?;
        relation_closures(RelationId::Digon, &[1, 1], n, &mut out)?;
    }
    if n >= 3 {
        relation_closures(RelationId::DigonDur, &[1, 1], n, &mut out)?;
    }

    let s = build_surface(1, 0, &combo(1, YoungDiagram::rect(1, n - 1)), n)?;
    let t = build_surface(n, 1, &SchurCombo::one(n), n)?;
    out.push(zf("sphere+torus", disjoint_union(&s, &t)?));
    Ok(out)
}

fn random_diagram<R: Rng + ?Sized>(rng: &mut R, cols: usize, max_size: usize) -> YoungDiagram {
    let size = rng.gen_range(0..=max_size);
    let mut rows: Vec<u32> = Vec::new();
    let mut left = size;
    let mut cap = cols as u32;
    while left > 0 && cap > 0 {
        let r = rng.gen_range(1..=cap.min(left as u32));
        rows.push(r);
        left -= r as usize;
        cap = r;
    }
    YoungDiagram::from_rows(&rows)
}

fn random_dec<R: Rng + ?Sized>(rng: &mut R, label: usize) -> Decoration {
    Decoration::single(label, random_diagram(rng, label, 2))
}

/// A random closed foam at `N = n` from the catalog families, with random
/// small decorations and handles.
pub fn random_zoo_foam<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<ZooFoam, ZooError> {
    if n == 0 {
        return Err(ZooError::BadParams("N must be positive".into()));
    }
    let mut kinds = vec!["surface", "graphxS1"];
    if n >= 2 {
        kinds.extend(["theta", "theta", "union"]);
    }
    if n >= 3 {
        kinds.extend(["gentheta", "suspension"]);
    }
    let kind = *kinds.choose(rng).expect("nonempty");
    let (name, foam) = match kind {
        "surface" => {
            let a = rng.gen_range(1..=n);
            let g = rng.gen_range(0..=2);
            let d = random_diagram(rng, a, 3);
            (format!("surface({a},g{g})"), build_surface(a, g, &combo(a, d), n)?)
        }
        "theta" => {
            let a = rng.gen_range(1..n);
            let b = rng.gen_range(1..=n - a);
            let ds = [random_diagram(rng, a, 2), random_diagram(rng, b, 2), random_diagram(rng, a + b, 2)];
            let f = build_theta(a, b, &combo(a, ds[0].clone()), &combo(b, ds[1].clone()), &combo(a + b, ds[2].clone()), n)?;
            (format!("theta({a},{b})"), f)
        }
        "gentheta" => {
            let k = rng.gen_range(3..=n.min(4));
            let all = compositions(n, k);
            let a_vec = all.choose(rng).expect("n >= k").clone();
            let mut decs = GenThetaDecorations::trivial(k);
            let ps: Vec<usize> = (1..=k).map(|i| a_vec[..i].iter().sum()).collect();
            for i in 0..k {
                decs.strands[i] = random_dec(rng, a_vec[i]);
                if i > 0 && rng.gen_bool(0.3) {
                    decs.partials[i] = random_dec(rng, ps[i]);
                }
            }
            (format!("gentheta{a_vec:?}"), build_gen_theta_closed(&a_vec, &decs)?)
        }
        "graphxS1" => {
            let g = if n >= 2 && rng.gen_bool(0.6) {
                let all = compositions(n, 2);
                MoyGraph::theta(all.choose(rng).expect("n >= 2"))
            } else {
                MoyGraph::circle(n, rng.gen_range(1..=n))
            };
            let total = g.edges.len() + g.circles.len();
            let labels: Vec<usize> = g.edges.iter().map(|e| e.label).chain(g.circles.iter().copied()).collect();
            let decs: Vec<Decoration> = (0..total)
                .map(|k| if rng.gen_bool(0.4) { random_dec(rng, labels[k]) } else { Decoration::one() })
                .collect();
            ("graphxS1".to_string(), build_graph_times_circle(&g, Some(&decs))?)
        }
        "suspension" => {
            let mut abc = [1usize; 3];
            let mut spare = n - 3;
            for x in abc.iter_mut() {
                let e = rng.gen_range(0..=spare.min(1));
                *x += e;
                spare -= e;
            }
            let [a, b, c] = abc;
            let labels = [a, b, c, a + b, b + c, a + b + c];
            let mut decs: [Decoration; 6] = Default::default();
            for k in 0..6 {
                if rng.gen_bool(0.3) {
                    decs[k] = random_dec(rng, labels[k]);
                }
            }
            (format!("suspension({a},{b},{c})"), build_suspension(a, b, c, &decs, n)?)
        }
        _ => {
            let a = rng.gen_range(1..n);
            let s = build_surface(a, 0, &combo(a, random_diagram(rng, a, n)), n)?;
            let t = build_theta(1, n - 1, &SchurCombo::one(1), &SchurCombo::one(n - 1), &SchurCombo::one(n), n)?;
            ("union".to_string(), disjoint_union(&s, &t)?)
        }
    };
    let foam = if !foam.facets.is_empty() && rng.gen_bool(0.2) {
        let k = rng.gen_range(0..foam.facets.len());
        add_handles(&foam, k, 1)?
    } else {
        foam
    };
    Ok(zf(name, foam))
}
