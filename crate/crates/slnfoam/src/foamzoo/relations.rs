//! Local relations as pairs of open foams over a common boundary web.
//!
//! A relation is a list of terms on each side; every term is a movie from a
//! bottom web `W` to a top web `W'` (see [`super::movie`]). A relation is
//! checked by closing every term with the same closer `W' -> W` and comparing
//! the evaluations of the two sides. The closers used here are the mirror
//! images of the relation's own terms, each decorated on at most one facet.
//!
//! The sphere and theta relations have closed evaluations given by a formula;
//! their right-hand side is computed from the closed left-hand side.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use super::movie::{CellFoam, Movie, Web};
use super::ZooError;
use crate::foamcore::{Decoration, Foam};
use crate::foameval::{eval_lincomb_with, eval_with, EvalOptions, FoamLinComb};
use crate::polyring::MultiPoly;
use crate::schur::{enumerate_box, lr_coeffs, partitions_of, schur_eval, Convention, SchurCombo, VarSet, YoungDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    Sphere,
    Theta,
    NeckCutting,
    DotMigration,
    Digon,
    DigonDur,
    Joint,
    Square,
    MatveevPiergallini,
}

impl RelationId {
    pub const ALL: [RelationId; 9] = [
        RelationId::Sphere,
        RelationId::Theta,
        RelationId::NeckCutting,
        RelationId::DotMigration,
        RelationId::Digon,
        RelationId::DigonDur,
        RelationId::Joint,
        RelationId::Square,
        RelationId::MatveevPiergallini,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::Sphere => "sphere",
            RelationId::Theta => "theta",
            RelationId::NeckCutting => "neck-cutting",
            RelationId::DotMigration => "dot-migration",
            RelationId::Digon => "digon",
            RelationId::DigonDur => "digon-dur",
            RelationId::Joint => "joint",
            RelationId::Square => "square",
            RelationId::MatveevPiergallini => "mp",
        }
    }

    /// The smallest parameters for which the relation is not trivial, and the
    /// smallest `N` they need.
    pub fn smallest(self) -> (Vec<usize>, usize) {
        match self {
            RelationId::Sphere => (vec![1], 2),
            RelationId::Theta => (vec![1, 1], 3),
            RelationId::NeckCutting => (vec![1], 2),
            RelationId::DotMigration => (vec![1, 1, 1], 2),
            RelationId::Digon => (vec![1, 1], 2),
            RelationId::DigonDur => (vec![1, 1], 3),
            RelationId::Joint => (vec![1, 1], 2),
            RelationId::Square => (vec![1, 1, 1, 1], 3),
            RelationId::MatveevPiergallini => (vec![1, 1, 1, 1], 4),
        }
    }

    /// Whether the right-hand side terms are expected to be pairwise
    /// orthogonal idempotents.
    pub fn has_idempotents(self) -> bool {
        matches!(self, RelationId::NeckCutting | RelationId::Digon | RelationId::DigonDur | RelationId::Joint | RelationId::Square)
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = ZooError;
    fn from_str(s: &str) -> Result<Self, ZooError> {
        RelationId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| ZooError::BadParams(format!("unknown relation `{s}`")))
    }
}

/// `coeff · foam`, with a name for reports.
#[derive(Debug, Clone)]
pub struct RelationTerm {
    pub coeff: i64,
    pub name: String,
    pub foam: CellFoam,
}

/// How the right-hand side of a relation is given.
#[derive(Debug, Clone)]
pub enum Rhs {
    Terms(Vec<RelationTerm>),
    /// Closed value of a decorated sphere.
    SphereFormula,
    /// Closed value of a decorated theta foam.
    ThetaFormula,
}

#[derive(Debug, Clone)]
pub struct Relation {
    pub id: RelationId,
    pub n: usize,
    pub params: Vec<usize>,
    pub lhs: Vec<RelationTerm>,
    pub rhs: Rhs,
    /// Row bound per facet label for inserted decorations (absent: unbounded).
    pub row_bounds: BTreeMap<usize, usize>,
}

impl Relation {
    pub fn rhs_terms(&self) -> &[RelationTerm] {
        match &self.rhs {
            Rhs::Terms(t) => t,
            _ => &[],
        }
    }

    fn all_terms(&self) -> impl Iterator<Item = &RelationTerm> {
        self.lhs.iter().chain(self.rhs_terms().iter())
    }
}

/// A closer `W' -> W` for a relation.
#[derive(Debug, Clone)]
pub struct Closure {
    pub name: String,
    pub foam: CellFoam,
}

fn yd_str(d: &YoungDiagram) -> String {
    let rows: Vec<String> = d.rows().iter().map(|r| r.to_string()).collect();
    format!("[{}]", rows.join(","))
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn dec(m: &mut Movie, face: usize, label: usize, d: &YoungDiagram) {
    if !d.is_empty() {
        m.decorate(face, SchurCombo::single(label, d.clone()));
    }
}

fn circle_web(a: usize) -> Web {
    let mut w = Web::new();
    w.add_circle(a);
    w
}

/// The closed theta web: split `w = 0`, merge `v = 1`, thick edge `e0`
/// from `v` to `w`, thin edges `e1` (label `a`, left) and `e2` (label `b`).
fn theta_web(a: usize, b: usize) -> Result<Web, ZooError> {
    let mut w = Web::new();
    let s = w.add_vertex(false);
    let m = w.add_vertex(true);
    let e = w.add_edge(a + b, m, s);
    let p = w.add_edge(a, s, m);
    let q = w.add_edge(b, s, m);
    w.set_rot(s, [e, p, q])?;
    w.set_rot(m, [e, q, p])?;
    Ok(w)
}

fn names(pairs: &[(usize, &str)]) -> BTreeMap<usize, String> {
    pairs.iter().map(|&(k, v)| (k, v.to_string())).collect()
}

fn identity_term(n: usize, web: Web) -> Result<RelationTerm, ZooError> {
    Ok(RelationTerm { coeff: 1, name: "id".into(), foam: Movie::new(n, web)?.finish()? })
}

// ---------------------------------------------------------------------------
// Sphere, theta and dot migration: cups closed by caps.

fn sphere_relation(a: usize, n: usize) -> Result<Relation, ZooError> {
    let mut m = Movie::empty(n);
    m.birth(a);
    let cup = m.finish()?;
    Ok(Relation {
        id: RelationId::Sphere,
        n,
        params: vec![a],
        lhs: vec![RelationTerm { coeff: 1, name: format!("cup({a})"), foam: cup }],
        rhs: Rhs::SphereFormula,
        row_bounds: BTreeMap::new(),
    })
}

fn theta_cup(a: usize, b: usize, n: usize, decs: [&YoungDiagram; 3]) -> Result<CellFoam, ZooError> {
    let mut m = Movie::empty(n);
    let c = m.birth(a + b);
    dec(&mut m, c.faces[0], a + b, decs[2]);
    let d = m.digon_birth(c.edges[0], a)?;
    dec(&mut m, d.faces[0], a, decs[0]);
    dec(&mut m, d.faces[1], b, decs[1]);
    Ok(m.finish()?)
}

fn theta_relation(a: usize, b: usize, n: usize) -> Result<Relation, ZooError> {
    let e = YoungDiagram::empty();
    let cup = theta_cup(a, b, n, [&e, &e, &e])?;
    let mut row_bounds = BTreeMap::new();
    row_bounds.insert(a + b, n - a - b);
    row_bounds.insert(a, b);
    row_bounds.insert(b, a);
    Ok(Relation {
        id: RelationId::Theta,
        n,
        params: vec![a, b],
        lhs: vec![RelationTerm { coeff: 1, name: format!("theta-cup({a},{b})"), foam: cup }],
        rhs: Rhs::ThetaFormula,
        row_bounds,
    })
}

fn dot_migration_relation(a: usize, b: usize, gamma: YoungDiagram, n: usize) -> Result<Relation, ZooError> {
    if !gamma.fits(a + b, n) {
        return Err(ZooError::BadParams(format!("{} does not fit on a facet of label {}", yd_str(&gamma), a + b)));
    }
    let e = YoungDiagram::empty();
    let lhs = RelationTerm { coeff: 1, name: format!("thick{}", yd_str(&gamma)), foam: theta_cup(a, b, n, [&e, &e, &gamma])? };
    let mut rhs = Vec::new();
    for al in (0..=gamma.size()).flat_map(partitions_of) {
        if !al.fits(a, usize::MAX) || !gamma.contains(&al) {
            continue;
        }
        for be in partitions_of(gamma.size() - al.size()) {
            if !be.fits(b, usize::MAX) {
                continue;
            }
            let c = lr_coeffs(&al, &be).get(&gamma).copied().unwrap_or(0);
            if c == 0 {
                continue;
            }
            rhs.push(RelationTerm {
                coeff: c as i64,
                name: format!("thin{}{}", yd_str(&al), yd_str(&be)),
                foam: theta_cup(a, b, n, [&al, &be, &e])?,
            });
        }
    }
    let mut params = vec![a, b];
    params.extend(gamma.rows().iter().map(|&r| r as usize));
    Ok(Relation { id: RelationId::DotMigration, n, params, lhs: vec![lhs], rhs: Rhs::Terms(rhs), row_bounds: BTreeMap::new() })
}

// ---------------------------------------------------------------------------
// Neck cutting: the identity of a circle through the empty web.

/// Placement of the pieces of a neck-cutting term; see [`neck_term`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeckVariant {
    /// The complementary circle sits on the left of the cut circle.
    pub co_left: bool,
    /// `π_α` sits on the label-`a` facet of the theta-shaped half.
    pub alpha_on_theta: bool,
    /// The theta-shaped half is the lower one.
    pub theta_below: bool,
}

pub const NECK_VARIANT: NeckVariant = NeckVariant { co_left: false, alpha_on_theta: false, theta_below: true };

/// One term of the neck-cutting relation: a plain disk of label `a` on one
/// side of the cut and, on the other side, a half of the theta foam
/// `θ(a, N-a)` carrying `π_α̂` on its facet of label `N-a`.
pub fn neck_term(a: usize, n: usize, alpha: &YoungDiagram, v: NeckVariant) -> Result<RelationTerm, ZooError> {
    let co = n - a;
    let hat = alpha.dual_in(a, co).map_err(|e| ZooError::BadParams(e.to_string()))?;
    let mut m = Movie::new(n, circle_web(a))?;
    let theta_half = |m: &mut Movie, below: bool, circle: Option<usize>| -> Result<Option<usize>, ZooError> {
        // below: caps `circle`; above: creates and returns a new circle.
        if co == 0 {
            return Ok(match circle {
                Some(e) => {
                    let d = m.death(e)?;
                    if v.alpha_on_theta {
                        dec(m, d.faces[0], a, alpha);
                    }
                    None
                }
                None => {
                    let b = m.birth(a);
                    if v.alpha_on_theta {
                        dec(m, b.faces[0], a, alpha);
                    }
                    Some(b.edges[0])
                }
            });
        }
        if below {
            let e = circle.unwrap();
            let c = m.birth(co);
            dec(m, c.faces[0], co, &hat);
            let z = if v.co_left { m.zip(c.edges[0], e)? } else { m.zip(e, c.edges[0])? };
            if v.alpha_on_theta {
                let af = if v.co_left { z.faces[1] } else { z.faces[0] };
                dec(m, af, a, alpha);
            }
            let dd = m.digon_death(z.edges[3])?;
            m.death(dd.edges[0])?;
            Ok(None)
        } else {
            let g = m.birth(n);
            let left = if v.co_left { co } else { a };
            let d = m.digon_birth(g.edges[0], left)?;
            let (af, cf) = if v.co_left { (d.faces[1], d.faces[0]) } else { (d.faces[0], d.faces[1]) };
            dec(m, cf, co, &hat);
            if v.alpha_on_theta {
                dec(m, af, a, alpha);
            }
            let u = m.unzip(d.edges[2])?;
            let (ae, ce) = if v.co_left { (u.edges[1], u.edges[0]) } else { (u.edges[0], u.edges[1]) };
            m.death(ce)?;
            Ok(Some(ae))
        }
    };
    let top = if v.theta_below {
        theta_half(&mut m, true, Some(0))?;
        let b = m.birth(a);
        if !v.alpha_on_theta {
            dec(&mut m, b.faces[0], a, alpha);
        }
        b.edges[0]
    } else {
        let d = m.death(0)?;
        if !v.alpha_on_theta {
            dec(&mut m, d.faces[0], a, alpha);
        }
        theta_half(&mut m, false, None)?.unwrap()
    };
    let foam = m.finish_named(&names(&[(top, "e0")]), &BTreeMap::new())?;
    let coeff = sign(hat.size() + n * (n + 1) / 2);
    Ok(RelationTerm { coeff, name: format!("cut{}", yd_str(alpha)), foam })
}

fn neck_relation(a: usize, n: usize, v: NeckVariant) -> Result<Relation, ZooError> {
    let rhs = enumerate_box(a, n - a).iter().map(|al| neck_term(a, n, al, v)).collect::<Result<Vec<_>, _>>()?;
    Ok(Relation {
        id: RelationId::NeckCutting,
        n,
        params: vec![a],
        lhs: vec![identity_term(n, circle_web(a))?],
        rhs: Rhs::Terms(rhs),
        row_bounds: BTreeMap::new(),
    })
}

// ---------------------------------------------------------------------------
// Digon removal: the identity of the theta web through a circle.

/// Which halves carry the two decorations of a digon term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigonVariant {
    pub alpha_below: bool,
    pub hat_below: bool,
}

pub const DIGON_VARIANT: DigonVariant = DigonVariant { alpha_below: true, hat_below: false };

/// Collapses the digon `(a, b)` of the theta web and opens it again, with
/// `π_α` on a facet of label `a` and `π_α̂` on a facet of label `b`.
pub fn digon_term(a: usize, b: usize, n: usize, alpha: &YoungDiagram, v: DigonVariant) -> Result<RelationTerm, ZooError> {
    let hat = alpha.dual_in(a, b).map_err(|e| ZooError::BadParams(e.to_string()))?;
    let mut m = Movie::new(n, theta_web(a, b)?)?;
    let dd = m.digon_death(1)?;
    let db = m.digon_birth(dd.edges[0], a)?;
    dec(&mut m, if v.alpha_below { dd.faces[0] } else { db.faces[0] }, a, alpha);
    dec(&mut m, if v.hat_below { dd.faces[1] } else { db.faces[1] }, b, &hat);
    let en = names(&[(db.edges[2], "e0"), (db.edges[0], "e1"), (db.edges[1], "e2")]);
    let vn = names(&[(db.verts[0], "v0"), (db.verts[1], "v1")]);
    let foam = m.finish_named(&en, &vn)?;
    Ok(RelationTerm { coeff: sign(hat.size()), name: format!("digon{}", yd_str(alpha)), foam })
}

fn digon_relation(a: usize, b: usize, n: usize, v: DigonVariant) -> Result<Relation, ZooError> {
    let rhs = enumerate_box(a, b).iter().map(|al| digon_term(a, b, n, al, v)).collect::<Result<Vec<_>, _>>()?;
    Ok(Relation {
        id: RelationId::Digon,
        n,
        params: vec![a, b],
        lhs: vec![identity_term(n, theta_web(a, b)?)?],
        rhs: Rhs::Terms(rhs),
        row_bounds: BTreeMap::new(),
    })
}

// ---------------------------------------------------------------------------
// Digon removal across a thick edge: the identity of the theta web through
// the circle of label `a`, passing through facets of label `N`.

/// Lower half: theta web `(a, b)` to the circle `a`. With `hashed`, a circle
/// of label `c = N-a-b` is zipped onto the thick edge, the digon `(b, c)` is
/// collapsed and the circle `N-a` is split off the resulting facet of label
/// `N`; otherwise the circle `b` is split off and capped. Returns the `a`
/// circle and the faces `(b face, c face)`.
fn dur_lower(m: &mut Movie, a: usize, b: usize, hashed: bool) -> Result<(usize, usize, Option<usize>), ZooError> {
    let n = m.n();
    let c = n - a - b;
    if !hashed || c == 0 {
        let u = m.unzip(0)?;
        let d = m.death(u.edges[1])?;
        return Ok((u.edges[0], d.faces[0], None));
    }
    let cb = m.birth(c);
    m.zip(0, cb.edges[0])?;
    // the merge v1 of (a, b) now feeds the left input of the new merge
    let am = m.assoc_merge(1)?;
    let sp = m.web.edge(am.edges[4])?.head.ok_or_else(|| ZooError::BadParams("lost split".into()))?;
    let asp = m.assoc_split(sp)?;
    let dd = m.digon_death(asp.edges[1])?;
    let u = m.unzip(asp.edges[4])?;
    m.death(u.edges[1])?;
    Ok((u.edges[0], dd.faces[0], Some(cb.faces[0])))
}

/// Upper half: circle `a` to the theta web `(a, b)`, mirror of [`dur_lower`].
/// Returns faces `(b face, c face)` and the final naming.
fn dur_upper(m: &mut Movie, ae: usize, a: usize, b: usize, hashed: bool) -> Result<(usize, Option<usize>, CellNames), ZooError> {
    let n = m.n();
    let c = n - a - b;
    if !hashed || c == 0 {
        let bb = m.birth(b);
        let z = m.zip(ae, bb.edges[0])?;
        let nm = CellNames {
            edges: names(&[(z.edges[0], "e0"), (z.edges[1], "e1"), (z.edges[2], "e2")]),
            verts: names(&[(z.verts[1], "v0"), (z.verts[0], "v1")]),
        };
        return Ok((bb.faces[0], None, nm));
    }
    let d = m.birth(n - a);
    let z = m.zip(ae, d.edges[0])?;
    // thin edge of label N-a runs from the split z.verts[1] to the merge z.verts[0]
    let db = m.digon_birth(z.edges[4], b)?;
    // splits: N -> (a, N-a), N-a -> (b, c); merges: (b, c) -> N-a, (a, N-a) -> N
    let si = m.assoc_split_inv(z.verts[1])?;
    let mi = m.assoc_merge_inv(db.verts[1])?;
    let u = m.unzip(mi.edges[4])?;
    m.death(u.edges[1])?;
    let nm = CellNames {
        edges: names(&[(u.edges[0], "e0"), (mi.edges[0], "e1"), (mi.edges[1], "e2")]),
        verts: names(&[(si.verts[1], "v0"), (mi.verts[0], "v1")]),
    };
    Ok((db.faces[0], Some(db.faces[1]), nm))
}

struct CellNames {
    edges: BTreeMap<usize, String>,
    verts: BTreeMap<usize, String>,
}

/// Shape and decoration placement of a thick-digon term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DurVariant {
    pub lower_hashed: bool,
    pub upper_hashed: bool,
    /// Facet carrying `π_α`: 0 lower b, 1 upper b.
    pub alpha_at: u8,
    /// Facet carrying the partner decoration: 0 lower b, 1 upper b, 2 lower
    /// c, 3 upper c. On a `b` facet the partner is the complement of `α` in
    /// `T(b, N-a-b)`, on a `c` facet it is `α̂`.
    pub partner_at: u8,
}

pub const DUR_VARIANT: DurVariant = DurVariant { lower_hashed: true, upper_hashed: true, alpha_at: 0, partner_at: 3 };

pub fn dur_term(a: usize, b: usize, n: usize, alpha: &YoungDiagram, v: DurVariant) -> Result<RelationTerm, ZooError> {
    let c = n - a - b;
    let mut m = Movie::new(n, theta_web(a, b)?)?;
    let (ae, lb, lc) = dur_lower(&mut m, a, b, v.lower_hashed)?;
    let (ub, uc, nm) = dur_upper(&mut m, ae, a, b, v.upper_hashed)?;
    let face_b = |k: u8| if k == 0 { lb } else { ub };
    dec(&mut m, face_b(v.alpha_at), b, alpha);
    match v.partner_at {
        0 | 1 => {
            let comp = alpha.complement_in(b, c).map_err(|e| ZooError::BadParams(e.to_string()))?;
            dec(&mut m, face_b(v.partner_at), b, &comp);
        }
        k => {
            let hat = alpha.dual_in(b, c).map_err(|e| ZooError::BadParams(e.to_string()))?;
            let f = if k == 2 { lc } else { uc };
            match f {
                Some(f) => dec(&mut m, f, c, &hat),
                None if hat.is_empty() => {}
                None => return Err(ZooError::BadParams("no facet of label N-a-b in this shape".into())),
            }
        }
    }
    let foam = m.finish_named(&nm.edges, &nm.verts)?;
    // The two hashed N-disks are glued with opposite orientations to the
    // rest of the term; their contribution is a global sign that only
    // depends on b.
    let disks = if v.lower_hashed && v.upper_hashed { b * (n - b) + b * (b + 1) / 2 } else { 0 };
    Ok(RelationTerm { coeff: sign(alpha.size() + disks), name: format!("dur{}", yd_str(alpha)), foam })
}

fn dur_relation(a: usize, b: usize, n: usize, v: DurVariant) -> Result<Relation, ZooError> {
    let rhs = enumerate_box(b, n - a - b).iter().map(|al| dur_term(a, b, n, al, v)).collect::<Result<Vec<_>, _>>()?;
    Ok(Relation {
        id: RelationId::DigonDur,
        n,
        params: vec![a, b],
        lhs: vec![identity_term(n, theta_web(a, b)?)?],
        rhs: Rhs::Terms(rhs),
        row_bounds: BTreeMap::new(),
    })
}

// ---------------------------------------------------------------------------
// Matveev-Piergallini: the two sequences of associativity moves from
// ((ab)c)d to a(b(cd)).

/// A closed web whose merge tree is `((ab)c)d`, built by digon births on a
/// single circle. Returns the web and the merges `(ab)`, `((ab)c)`, `(((ab)c)d)`.
fn mp_web(l: [usize; 4], n: usize) -> Result<(Web, [usize; 3]), ZooError> {
    let total: usize = l.iter().sum();
    let mut m = Movie::empty(n);
    let c = m.birth(total);
    let d1 = m.digon_birth(c.edges[0], total - l[3])?;
    let d2 = m.digon_birth(d1.edges[0], l[0] + l[1])?;
    let d3 = m.digon_birth(d2.edges[0], l[0])?;
    // merges (a,b), (ab,c), (abc,d)
    Ok((m.web, [d3.verts[1], d2.verts[1], d1.verts[1]]))
}

/// Names web cells by structure so that webs reached along different move
/// sequences get equal names: vertices of `orig` keep `v<id>`, an edge is
/// named after its tail vertex and slot, a new vertex after its inputs.
fn structural_names(web: &Web, orig: &BTreeSet<usize>) -> Result<CellNames, ZooError> {
    let mut vn: BTreeMap<usize, String> = BTreeMap::new();
    let mut en: BTreeMap<usize, String> = BTreeMap::new();
    for v in web.live_verts() {
        if orig.contains(&v) {
            vn.insert(v, format!("v{v}"));
        }
    }
    loop {
        let mut changed = false;
        for v in web.live_verts() {
            let wv = web.vert(v)?;
            if let Some(name) = vn.get(&v).cloned() {
                for (slot, h) in wv.rot.iter().enumerate() {
                    if !h.at_head && !en.contains_key(&h.edge) {
                        en.insert(h.edge, format!("{name}/{slot}"));
                        changed = true;
                    }
                }
            } else {
                let ins: Vec<usize> = wv.rot.iter().filter(|h| h.at_head).map(|h| h.edge).collect();
                if ins.iter().all(|e| en.contains_key(e)) {
                    let parts: Vec<&str> = ins.iter().map(|e| en[e].as_str()).collect();
                    let tag = if wv.merge { "m" } else { "s" };
                    vn.insert(v, format!("{tag}({})", parts.join(",")));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if vn.len() != web.live_verts().len() || en.len() != web.live_edges().len() {
        return Err(ZooError::BadParams("web cells cannot be named structurally".into()));
    }
    Ok(CellNames { edges: en, verts: vn })
}

fn mp_relation(l: [usize; 4], n: usize) -> Result<Relation, ZooError> {
    let (web, [m_ab, m_abc, _]) = mp_web(l, n)?;
    let orig: BTreeSet<usize> = web.live_verts().into_iter().filter(|&v| !web.vert(v).map(|x| x.merge).unwrap_or(true)).collect();
    let finish = |m: Movie| -> Result<CellFoam, ZooError> {
        let nm = structural_names(&m.web, &orig)?;
        Ok(m.finish_named(&nm.edges, &nm.verts)?)
    };
    // ((ab)c)d -> (ab)(cd) -> a(b(cd))
    let mut p1 = Movie::new(n, web.clone())?;
    let x = p1.assoc_merge(m_abc)?;
    let ab = p1.web.edge(x.edges[0])?.tail.ok_or_else(|| ZooError::BadParams("lost merge".into()))?;
    p1.assoc_merge(ab)?;
    // ((ab)c)d -> (a(bc))d -> a((bc)d) -> a(b(cd))
    let mut p2 = Movie::new(n, web)?;
    let y = p2.assoc_merge(m_ab)?;
    let z = p2.assoc_merge(y.verts[1])?;
    let bc = p2.web.edge(z.edges[1])?.tail.ok_or_else(|| ZooError::BadParams("lost merge".into()))?;
    p2.assoc_merge(bc)?;
    Ok(Relation {
        id: RelationId::MatveevPiergallini,
        n,
        params: l.to_vec(),
        lhs: vec![RelationTerm { coeff: 1, name: "two-moves".into(), foam: finish(p1)? }],
        rhs: Rhs::Terms(vec![RelationTerm { coeff: 1, name: "three-moves".into(), foam: finish(p2)? }]),
        row_bounds: BTreeMap::new(),
    })
}

// ---------------------------------------------------------------------------

fn need(params: &[usize], k: usize, id: RelationId) -> Result<(), ZooError> {
    if params.len() < k || params[..k].iter().any(|&x| x == 0) {
        return Err(ZooError::BadParams(format!("{id} needs {k} positive labels")));
    }
    Ok(())
}

fn need_le(total: usize, n: usize, params: &[usize]) -> Result<(), ZooError> {
    if total > n {
        return Err(ZooError::LabelOverflow(params.to_vec(), n));
    }
    Ok(())
}

/// Both sides of a local relation.
///
/// Parameters: sphere `[a]`; theta `[a, b]`; neck-cutting `[a]`;
/// dot-migration `[a, b, rows of γ...]`; digon `[a, b]`; digon-dur `[a, b]`;
/// mp `[a, b, c, d]`. The joint and square relations are not available.
pub fn build_relation(id: RelationId, params: &[usize], n: usize) -> Result<Relation, ZooError> {
    match id {
        RelationId::Sphere => {
            need(params, 1, id)?;
            need_le(params[0], n, params)?;
            sphere_relation(params[0], n)
        }
        RelationId::Theta => {
            need(params, 2, id)?;
            need_le(params[0] + params[1], n, params)?;
            theta_relation(params[0], params[1], n)
        }
        RelationId::NeckCutting => {
            need(params, 1, id)?;
            need_le(params[0], n, params)?;
            neck_relation(params[0], n, NECK_VARIANT)
        }
        RelationId::DotMigration => {
            need(params, 2, id)?;
            need_le(params[0] + params[1], n, params)?;
            let rows: Vec<u32> = params[2..].iter().map(|&r| r as u32).collect();
            let gamma = YoungDiagram::new(rows).map_err(|e| ZooError::BadParams(e.to_string()))?;
            dot_migration_relation(params[0], params[1], gamma, n)
        }
        RelationId::Digon => {
            need(params, 2, id)?;
            need_le(params[0] + params[1], n, params)?;
            digon_relation(params[0], params[1], n, DIGON_VARIANT)
        }
        RelationId::DigonDur => {
            need(params, 2, id)?;
            need_le(params[0] + params[1], n, params)?;
            dur_relation(params[0], params[1], n, DUR_VARIANT)
        }
        RelationId::MatveevPiergallini => {
            need(params, 4, id)?;
            need_le(params[..4].iter().sum(), n, params)?;
            mp_relation([params[0], params[1], params[2], params[3]], n)
        }
        RelationId::Joint | RelationId::Square => {
            Err(ZooError::Unavailable(format!("the local geometry of the {id} relation is not reconstructed")))
        }
    }
}

/// Variant builders, for pinning placements against the evaluation.
pub fn build_neck_variant(a: usize, n: usize, v: NeckVariant) -> Result<Relation, ZooError> {
    neck_relation(a, n, v)
}

pub fn build_digon_variant(a: usize, b: usize, n: usize, v: DigonVariant) -> Result<Relation, ZooError> {
    digon_relation(a, b, n, v)
}

pub fn build_dur_variant(a: usize, b: usize, n: usize, v: DurVariant) -> Result<Relation, ZooError> {
    dur_relation(a, b, n, v)
}

// ---------------------------------------------------------------------------
// Closures.

fn diagrams_up_to(label: usize, max_rows: Option<usize>, d: usize) -> Vec<YoungDiagram> {
    (1..=d)
        .flat_map(partitions_of)
        .filter(|l| l.fits(label, max_rows.unwrap_or(usize::MAX)))
        .collect()
}

/// Mirror images of every term of `rel`, undecorated and with every single
/// Schur decoration `π_λ`, `|λ| <= d`, on one facet (one face per class of
/// faces that lie in a common facet).
pub fn closure_family(rel: &Relation, d: usize) -> Vec<Closure> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for t in rel.all_terms() {
        if !seen.insert(t.name.clone()) {
            continue;
        }
        let base = t.foam.mirror();
        out.push(Closure { name: format!("{}*", t.name), foam: base.clone() });
        for (k, class) in base.face_classes().iter().enumerate() {
            let face = class[0];
            let label = base.faces[face].label;
            if label == 0 {
                continue;
            }
            for lam in diagrams_up_to(label, rel.row_bounds.get(&label).copied(), d) {
                let mut f = base.clone();
                f.decorate(face, SchurCombo::single(label, lam.clone()));
                out.push(Closure { name: format!("{}*:{}{}", t.name, k, yd_str(&lam)), foam: f });
            }
        }
    }
    out
}

fn close_term(t: &CellFoam, c: &Closure) -> Result<Foam, ZooError> {
    Ok(t.compose(&c.foam)?.trace()?.to_foam()?)
}

fn single_diagram(d: &Decoration) -> Option<YoungDiagram> {
    let mut out = YoungDiagram::empty();
    let mut seen = false;
    for f in d.factors.iter().filter(|f| !f.is_one()) {
        if seen || f.terms.len() != 1 {
            return None;
        }
        let (y, c) = f.terms.iter().next()?;
        if !c.is_one() {
            return None;
        }
        out = y.clone();
        seen = true;
    }
    Some(out)
}

/// `⟨sphere labeled a decorated π_α⟩` in `N` variables.
pub fn sphere_value(a: usize, alpha: &YoungDiagram, n: usize) -> MultiPoly {
    let co = n - a;
    if !alpha.fits(a, usize::MAX) || alpha.num_rows() < co || (0..co).any(|i| alpha.row(i) != a as u32) {
        return MultiPoly::zero(n);
    }
    let beta = YoungDiagram::from_rows(&alpha.rows()[co..]);
    let all = VarSet::new((0..n).collect());
    let p = schur_eval(&beta, &all, n, Convention::Conjugate).unwrap_or_else(|_| MultiPoly::zero(n));
    p.scale(&BigInt::from(sign(a * (a + 1) / 2)))
}

/// `⟨θ(a, b)⟩` with `α ∈ T(a,b)`, `β ∈ T(b,a)`, `γ ∈ T(a+b, N-a-b)`; `None`
/// outside these boxes.
pub fn theta_value(a: usize, b: usize, alpha: &YoungDiagram, beta: &YoungDiagram, gamma: &YoungDiagram, n: usize) -> Option<i64> {
    if !alpha.fits(a, b) || !beta.fits(b, a) || !gamma.fits(a + b, n - a - b) {
        return None;
    }
    let bh = beta.dual_in(b, a).ok()?;
    if bh == *alpha && *gamma == YoungDiagram::rect(a + b, n - a - b) {
        Some(sign((a + b) * (a + b + 1) / 2 + alpha.size()))
    } else {
        Some(0)
    }
}

fn formula_value(rhs: &Rhs, f: &Foam) -> Result<MultiPoly, ZooError> {
    let bad = |m: &str| ZooError::BadParams(format!("formula does not apply: {m}"));
    match rhs {
        Rhs::SphereFormula => {
            if f.facets.len() != 1 || !f.arcs.is_empty() || f.facets[0].genus != 0 {
                return Err(bad("not a sphere"));
            }
            let alpha = single_diagram(&f.facets[0].decoration).ok_or_else(|| bad("decoration"))?;
            Ok(sphere_value(f.facets[0].label, &alpha, f.n))
        }
        Rhs::ThetaFormula => {
            if f.facets.len() != 3 || f.arcs.len() != 1 || f.facets.iter().any(|x| x.genus != 0) {
                return Err(bad("not a theta foam"));
            }
            let s = f.arcs[0].sides;
            let dg = |k: usize| single_diagram(&f.facets[s[k]].decoration).ok_or_else(|| bad("decoration"));
            let (a, b) = (f.facets[s[0]].label, f.facets[s[1]].label);
            let v = theta_value(a, b, &dg(0)?, &dg(1)?, &dg(2)?, f.n).ok_or_else(|| bad("decoration outside its box"))?;
            Ok(MultiPoly::constant(f.n, v))
        }
        Rhs::Terms(_) => Err(bad("relation has explicit terms")),
    }
}

fn empty_foam(n: usize) -> Foam {
    Foam { n, facets: vec![], arcs: vec![], points: vec![] }
}

/// Both sides of `rel` closed by `c`.
pub fn close_relation(rel: &Relation, c: &Closure) -> Result<(FoamLinComb, FoamLinComb), ZooError> {
    let mut lhs = FoamLinComb::new();
    for t in &rel.lhs {
        lhs.push_int(t.coeff, close_term(&t.foam, c)?);
    }
    let mut rhs = FoamLinComb::new();
    match &rel.rhs {
        Rhs::Terms(ts) => {
            for t in ts {
                rhs.push_int(t.coeff, close_term(&t.foam, c)?);
            }
        }
        other => {
            let (_, f) = lhs.terms.first().ok_or_else(|| ZooError::BadParams("empty left-hand side".into()))?;
            rhs.push(formula_value(other, f)?, empty_foam(rel.n));
        }
    }
    Ok((lhs, rhs))
}

/// Evaluations of one closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCheck {
    pub name: String,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
}

impl ClosureCheck {
    pub fn holds(&self) -> bool {
        (&self.lhs - &self.rhs).is_zero()
    }
}

fn eval_opts() -> EvalOptions {
    EvalOptions { jobs: 1, ..EvalOptions::default() }
}

fn zerr(e: impl fmt::Display) -> ZooError {
    ZooError::Eval(e.to_string())
}

fn in_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> T {
    if jobs <= 1 {
        return work();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

/// Evaluates both sides of `rel` under every closure of degree at most `d`.
pub fn check_relation(rel: &Relation, d: usize, jobs: usize) -> Result<Vec<ClosureCheck>, ZooError> {
    let fam = closure_family(rel, d);
    let one = |c: &Closure| -> Result<ClosureCheck, ZooError> {
        let (l, r) = close_relation(rel, c)?;
        let lhs = eval_lincomb_with(&l, &eval_opts()).map_err(zerr)?;
        let rhs = eval_lincomb_with(&r, &eval_opts()).map_err(zerr)?;
        Ok(ClosureCheck { name: c.name.clone(), lhs: pad(lhs, rel.n), rhs: pad(rhs, rel.n) })
    };
    in_pool(jobs, || fam.par_iter().map(one).collect())
}

fn pad(p: MultiPoly, n: usize) -> MultiPoly {
    if p.is_zero() {
        MultiPoly::zero(n)
    } else {
        p
    }
}

/// `t_i · t_j` closed by `c`, against `δ_ij t_i` closed by `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentCheck {
    pub i: usize,
    pub j: usize,
    pub closure: String,
    pub product: MultiPoly,
    pub expected: MultiPoly,
}

impl IdempotentCheck {
    pub fn holds(&self) -> bool {
        (&self.product - &self.expected).is_zero()
    }
}

/// Checks that the right-hand side terms of `rel` are pairwise orthogonal
/// idempotents, as endomorphisms of the boundary web, under every closure.
pub fn check_idempotents(rel: &Relation, d: usize, jobs: usize) -> Result<Vec<IdempotentCheck>, ZooError> {
    let ts = rel.rhs_terms();
    let fam = closure_family(rel, d);
    let mut jobs_list = Vec::new();
    for i in 0..ts.len() {
        for j in 0..ts.len() {
            for c in 0..fam.len() {
                jobs_list.push((i, j, c));
            }
        }
    }
    let n = rel.n;
    let one = |&(i, j, c): &(usize, usize, usize)| -> Result<IdempotentCheck, ZooError> {
        let prod = ts[i].foam.compose(&ts[j].foam)?;
        let f = close_term(&prod, &fam[c])?;
        let v = eval_with(&f, &eval_opts()).map_err(zerr)?;
        let product = pad(v, n).scale(&BigInt::from(ts[i].coeff * ts[j].coeff));
        let expected = if i == j {
            let g = close_term(&ts[i].foam, &fam[c])?;
            pad(eval_with(&g, &eval_opts()).map_err(zerr)?, n).scale(&BigInt::from(ts[i].coeff))
        } else {
            MultiPoly::zero(n)
        };
        Ok(IdempotentCheck { i, j, closure: fam[c].name.clone(), product, expected })
    };
    in_pool(jobs, || jobs_list.par_iter().map(one).collect())
}
