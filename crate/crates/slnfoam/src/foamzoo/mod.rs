//! Builders for named closed foams, both sides of the local relations, and
//! the closures that turn a local relation into identities between closed
//! evaluations.

pub mod catalog;
pub mod lemmas;
pub mod movie;
pub mod relations;

use thiserror::Error;

use crate::foamcore::{strip_zero_facets, validate_foam, ArcKind, BindingArc, Decoration, Facet, Foam, FoamError, SingularPoint};
use crate::moyflag::{MoyError, MoyGraph};
use crate::schur::{Convention, SchurCombo};

pub use catalog::{random_zoo_foam, zoo, ZooFoam};
pub use lemmas::{check_lemmas, merge_reports, Lemma, LemmaReport, LemmaTally};
pub use movie::{Cell, CellFoam, Movie, MovieError, MoveOut, Web};
pub use relations::{
    build_relation, check_idempotents, check_relation, close_relation, closure_family, sphere_value, theta_value, Closure,
    ClosureCheck, IdempotentCheck, Relation, RelationId, RelationTerm, Rhs,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZooError {
    #[error("decoration has arity {got}, facet label is {label}")]
    Arity { got: usize, label: usize },
    #[error("labels {0:?} exceed N = {1}")]
    LabelOverflow(Vec<usize>, usize),
    #[error("labels sum to {got}, expected {n}")]
    SumMismatch { got: usize, n: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Movie(#[from] MovieError),
    #[error(transparent)]
    Foam(#[from] FoamError),
    #[error("graph: {0}")]
    Graph(String),
    #[error("built foam is invalid: {0}")]
    Invalid(String),
    #[error("evaluation: {0}")]
    Eval(String),
    #[error("unavailable: {0}")]
    Unavailable(String),
}

impl From<MoyError> for ZooError {
    fn from(e: MoyError) -> Self {
        ZooError::Graph(e.to_string())
    }
}

fn check_dec(d: &SchurCombo, label: usize) -> Result<Decoration, ZooError> {
    if d.is_one() {
        return Ok(Decoration::one());
    }
    if d.arity != label {
        return Err(ZooError::Arity { got: d.arity, label });
    }
    d.validate(Convention::Conjugate).map_err(|e| ZooError::BadParams(e.to_string()))?;
    Ok(Decoration::from_combo(d.clone()))
}

fn check_decoration(d: &Decoration, label: usize) -> Result<(), ZooError> {
    for f in &d.factors {
        check_dec(f, label)?;
    }
    Ok(())
}

fn checked(f: Foam) -> Result<Foam, ZooError> {
    let rep = validate_foam(&f);
    if rep.is_ok() {
        Ok(f)
    } else {
        Err(ZooError::Invalid(rep.to_string()))
    }
}

/// A closed surface of genus `genus` labeled `a`.
pub fn build_surface(a: usize, genus: usize, dec: &SchurCombo, n: usize) -> Result<Foam, ZooError> {
    if a > n {
        return Err(ZooError::LabelOverflow(vec![a], n));
    }
    let decoration = check_dec(dec, a)?;
    checked(Foam { n, facets: vec![Facet { id: 0, label: a, genus, boundary: vec![], decoration }], arcs: vec![], points: vec![] })
}

/// A sphere labeled `a`.
pub fn build_sphere(a: usize, dec: &SchurCombo, n: usize) -> Result<Foam, ZooError> {
    build_surface(a, 0, dec, n)
}

/// Three disks labeled `a`, `b`, `a+b` glued along one circle binding,
/// stored in that cyclic order.
pub fn build_theta(
    a: usize,
    b: usize,
    dec_a: &SchurCombo,
    dec_b: &SchurCombo,
    dec_ab: &SchurCombo,
    n: usize,
) -> Result<Foam, ZooError> {
    if a + b > n {
        return Err(ZooError::LabelOverflow(vec![a, b], n));
    }
    let labels = [a, b, a + b];
    let decs = [check_dec(dec_a, a)?, check_dec(dec_b, b)?, check_dec(dec_ab, a + b)?];
    let facets = (0..3)
        .map(|k| Facet { id: k, label: labels[k], genus: 0, boundary: vec![vec![(0, k)]], decoration: decs[k].clone() })
        .collect();
    let f = Foam { n, facets, arcs: vec![BindingArc { id: 0, kind: ArcKind::Circle, sides: [0, 1, 2], endpoints: None }], points: vec![] };
    checked(f)
}

/// Decorations of a closed generalized theta foam. `strands[i]` sits on the
/// disk of strand `i`; `partials[i]` on the facet labeled `a_1 + ... + a_{i+1}`.
/// The first strand and the first partial facet are the same facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenThetaDecorations {
    pub strands: Vec<Decoration>,
    pub partials: Vec<Decoration>,
}

impl GenThetaDecorations {
    pub fn trivial(k: usize) -> Self {
        GenThetaDecorations { strands: vec![Decoration::one(); k], partials: vec![Decoration::one(); k] }
    }

    /// Three layers of per-strand decorations (cup, pants, cap) multiplied together.
    pub fn from_layers(layers: &[Vec<Decoration>; 3]) -> Self {
        let k = layers[0].len();
        let mut d = GenThetaDecorations::trivial(k);
        for layer in layers {
            for (i, x) in layer.iter().enumerate() {
                d.strands[i] = d.strands[i].times(x);
            }
        }
        d
    }

    pub fn times(&self, o: &GenThetaDecorations) -> GenThetaDecorations {
        GenThetaDecorations {
            strands: self.strands.iter().zip(&o.strands).map(|(x, y)| x.times(y)).collect(),
            partials: self.partials.iter().zip(&o.partials).map(|(x, y)| x.times(y)).collect(),
        }
    }
}

/// The closed foam over `θ(a_1, ..., a_k)`: nested theta foams. Facets are
/// the strand disks `D_1..D_k` (ids `0..k`) and the partial-sum facets
/// `P_2..P_k` (ids `k..2k-1`), with `P_1 = D_1`. Binding `i-2` is the circle
/// where `P_{i-1}`, `D_i` and `P_i` meet.
pub fn build_gen_theta_closed(a_vec: &[usize], decs: &GenThetaDecorations) -> Result<Foam, ZooError> {
    let k = a_vec.len();
    if k == 0 || a_vec.contains(&0) {
        return Err(ZooError::BadParams("labels must be positive".into()));
    }
    if decs.strands.len() != k || decs.partials.len() != k {
        return Err(ZooError::BadParams(format!("expected {k} strand and partial decorations")));
    }
    let n: usize = a_vec.iter().sum();
    let ps: Vec<usize> = (1..=k).map(|i| a_vec[..i].iter().sum()).collect();
    let p_id = |i: usize| if i == 1 { 0 } else { k + i - 2 }; // 1-based partial index
    let mut facets = Vec::new();
    for i in 1..=k {
        let dec = decs.strands[i - 1].clone();
        check_decoration(&dec, a_vec[i - 1])?;
        facets.push(Facet { id: i - 1, label: a_vec[i - 1], genus: 0, boundary: vec![], decoration: dec });
    }
    for i in 2..=k {
        facets.push(Facet { id: p_id(i), label: ps[i - 1], genus: 0, boundary: vec![], decoration: Decoration::one() });
    }
    for i in 1..=k {
        let dec = &decs.partials[i - 1];
        check_decoration(dec, ps[i - 1])?;
        let f = &mut facets[p_id(i)];
        f.decoration = f.decoration.times(dec);
    }
    let mut arcs = Vec::new();
    for i in 2..=k {
        let id = arcs.len();
        arcs.push(BindingArc { id, kind: ArcKind::Circle, sides: [p_id(i - 1), i - 1, p_id(i)], endpoints: None });
        facets[p_id(i - 1)].boundary.push(vec![(id, 0)]);
        facets[i - 1].boundary.push(vec![(id, 1)]);
        facets[p_id(i)].boundary.push(vec![(id, 2)]);
    }
    checked(Foam { n, facets, arcs, points: vec![] })
}

/// `Γ × S¹`: every edge sweeps an annulus (a torus for a free circle), every
/// vertex sweeps a circle binding with sides `[thin, thin, thick]`.
/// `decs[e]` decorates the facet of edge `e`; circles follow the edges.
pub fn build_graph_times_circle(g: &MoyGraph, decs: Option<&[Decoration]>) -> Result<Foam, ZooError> {
    g.validate()?;
    let ne = g.edges.len();
    let total = ne + g.circles.len();
    if let Some(d) = decs {
        if d.len() != total {
            return Err(ZooError::BadParams(format!("expected {total} decorations")));
        }
    }
    let dec = |k: usize| decs.map(|d| d[k].clone()).unwrap_or_default();
    let mut facets: Vec<Facet> = Vec::new();
    for e in &g.edges {
        facets.push(Facet { id: e.id, label: e.label, genus: 0, boundary: vec![], decoration: dec(e.id) });
    }
    for (j, &c) in g.circles.iter().enumerate() {
        facets.push(Facet { id: ne + j, label: c, genus: 1, boundary: vec![], decoration: dec(ne + j) });
    }
    for f in &facets {
        check_decoration(&f.decoration, f.label)?;
    }
    let mut arcs = Vec::new();
    for v in 0..g.vertices.len() {
        let ([x, y], z) = g.vertex_edges(v)?;
        arcs.push(BindingArc { id: v, kind: ArcKind::Circle, sides: [x, y, z], endpoints: None });
        for (slot, e) in [x, y, z].into_iter().enumerate() {
            facets[e].boundary.push(vec![(v, slot)]);
        }
    }
    let f = Foam { n: g.n, facets, arcs, points: vec![] };
    let f = strip_zero_facets(&f)?;
    checked(f)
}

/// The suspension of the tetrahedral web: six disks labeled
/// `a, b, c, a+b, b+c, a+b+c` glued along four arcs between two singular
/// points. `decs` are in that facet order.
pub fn build_suspension(a: usize, b: usize, c: usize, decs: &[Decoration; 6], n: usize) -> Result<Foam, ZooError> {
    if a == 0 || b == 0 || c == 0 {
        return Err(ZooError::BadParams("suspension labels must be positive".into()));
    }
    if a + b + c > n {
        return Err(ZooError::LabelOverflow(vec![a, b, c], n));
    }
    let labels = [a, b, c, a + b, b + c, a + b + c];
    let (fa, fb, fc, fab, fbc, fabc) = (0, 1, 2, 3, 4, 5);
    let arcs = vec![
        BindingArc { id: 0, kind: ArcKind::Interval, sides: [fa, fb, fab], endpoints: Some([0, 1]) },
        BindingArc { id: 1, kind: ArcKind::Interval, sides: [fab, fc, fabc], endpoints: Some([0, 1]) },
        BindingArc { id: 2, kind: ArcKind::Interval, sides: [fb, fc, fbc], endpoints: Some([1, 0]) },
        BindingArc { id: 3, kind: ArcKind::Interval, sides: [fa, fbc, fabc], endpoints: Some([1, 0]) },
    ];
    let boundary: [Vec<(usize, usize)>; 6] = [
        vec![(0, 0), (3, 0)],
        vec![(0, 1), (2, 0)],
        vec![(1, 1), (2, 1)],
        vec![(0, 2), (1, 0)],
        vec![(2, 2), (3, 1)],
        vec![(1, 2), (3, 2)],
    ];
    let mut facets = Vec::new();
    for k in 0..6 {
        check_decoration(&decs[k], labels[k])?;
        facets.push(Facet { id: k, label: labels[k], genus: 0, boundary: vec![boundary[k].clone()], decoration: decs[k].clone() });
    }
    let points = vec![
        SingularPoint { id: 0, incident: [(0, 0), (1, 0), (2, 1), (3, 1)] },
        SingularPoint { id: 1, incident: [(0, 1), (1, 1), (2, 0), (3, 0)] },
    ];
    checked(Foam { n, facets, arcs, points })
}

/// Adds `extra` handles to facet `k`.
pub fn add_handles(f: &Foam, k: usize, extra: usize) -> Result<Foam, ZooError> {
    let mut g = f.clone();
    let fc = g.facets.get_mut(k).ok_or(ZooError::BadParams(format!("no facet {k}")))?;
    fc.genus += extra;
    checked(g)
}

/// Multiplies a decoration onto facet `k`.
pub fn decorate(f: &Foam, k: usize, d: &Decoration) -> Result<Foam, ZooError> {
    let mut g = f.clone();
    let fc = g.facets.get_mut(k).ok_or(ZooError::BadParams(format!("no facet {k}")))?;
    check_decoration(d, fc.label)?;
    fc.decoration = fc.decoration.times(d);
    Ok(g)
}

/// Two foams side by side.
pub fn disjoint_union(f: &Foam, g: &Foam) -> Result<Foam, ZooError> {
    if f.n != g.n {
        return Err(ZooError::BadParams(format!("N differs: {} and {}", f.n, g.n)));
    }
    let (fo, ao, po) = (f.facets.len(), f.arcs.len(), f.points.len());
    let mut out = f.clone();
    for fc in &g.facets {
        let mut x = fc.clone();
        x.id += fo;
        for c in &mut x.boundary {
            for s in c.iter_mut() {
                s.0 += ao;
            }
        }
        out.facets.push(x);
    }
    for a in &g.arcs {
        let mut x = a.clone();
        x.id += ao;
        x.sides = x.sides.map(|s| s + fo);
        x.endpoints = x.endpoints.map(|e| e.map(|p| p + po));
        out.arcs.push(x);
    }
    for p in &g.points {
        out.points.push(SingularPoint { id: p.id + po, incident: p.incident.map(|(a, e)| (a + ao, e)) });
    }
    checked(out)
}
