//! Closed decorated foams: data model, validation of the local models,
//! colorings, and the topological quantities the evaluation needs.
//!
//! A foam is stored abstractly. Facets are oriented surfaces with
//! boundary. Binding arcs glue three boundary pieces together, and singular
//! points are where four binding arcs meet. The cyclic order around a
//! binding is the storage order of its `sides`: two thin facets, then the
//! thick one. Pigment sets are bitmasks, with bit `k` standing for pigment
//! `k + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::schur::{Convention, SchurCombo, YoungDiagram};

/// A set of pigments; bit `k` is pigment `k + 1`.
pub type PigSet = u32;

/// Largest N this crate supports, since pigment sets are `u32` bitmasks.
pub const MAX_N: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoamError {
    #[error("odd Euler characteristic {chi} for {what}")]
    OddEuler { what: String, chi: i64 },
    #[error("bad circle structure at singular point {point} for pigments ({i}, {j})")]
    BadCircleStructure { point: usize, i: usize, j: usize },
    #[error("inconsistent sign along a theta circle for pigments ({i}, {j})")]
    InconsistentCircle { i: usize, j: usize },
    #[error("no Kempe component {0}")]
    NoComponent(usize),
    #[error("pigments must satisfy 1 <= i < j <= N, got ({0}, {1})")]
    BadPigments(usize, usize),
    #[error("invalid foam: {0}")]
    Invalid(String),
    #[error("coloring violates the flow condition: {0}")]
    BadColoring(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Circle,
    Interval,
}

/// A facet decoration: a product of Schur combinations in `label` variables.
/// The empty product is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decoration {
    pub factors: Vec<SchurCombo>,
}

impl Decoration {
    pub fn one() -> Self {
        Decoration { factors: Vec::new() }
    }

    pub fn single(arity: usize, d: YoungDiagram) -> Self {
        if d.is_empty() {
            return Decoration::one();
        }
        Decoration { factors: vec![SchurCombo::single(arity, d)] }
    }

    pub fn from_combo(c: SchurCombo) -> Self {
        if c.is_one() {
            return Decoration::one();
        }
        Decoration { factors: vec![c] }
    }

    pub fn is_one(&self) -> bool {
        self.factors.iter().all(|f| f.is_one())
    }

    /// Product of two decorations.
    pub fn times(&self, o: &Decoration) -> Decoration {
        let mut factors: Vec<SchurCombo> = self.factors.iter().filter(|f| !f.is_one()).cloned().collect();
        factors.extend(o.factors.iter().filter(|f| !f.is_one()).cloned());
        Decoration { factors }
    }

    /// Graded degree (variables have degree 2), if every factor is homogeneous.
    pub fn graded_degree(&self) -> Option<i64> {
        let mut d = 0;
        for f in &self.factors {
            d += f.graded_degree()?;
        }
        Some(d)
    }
}

/// File form of a decoration: either one combination as `[[diagram, coeff], ...]`,
/// or a product written as a list of such lists.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DecorationFile {
    Single(Vec<(Vec<u32>, i64)>),
    Product(Vec<Vec<(Vec<u32>, i64)>>),
}

fn combo_to_file(c: &SchurCombo) -> Vec<(Vec<u32>, i64)> {
    use num_traits::ToPrimitive;
    c.terms
        .iter()
        .map(|(d, k)| (d.rows().to_vec(), k.to_i64().expect("decoration coefficient exceeds i64")))
        .collect()
}

impl Serialize for Decoration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let factors: Vec<&SchurCombo> = self.factors.iter().filter(|f| !f.is_one()).collect();
        match factors.len() {
            0 => DecorationFile::Single(vec![(vec![], 1)]).serialize(s),
            1 => DecorationFile::Single(combo_to_file(factors[0])).serialize(s),
            _ => DecorationFile::Product(factors.iter().map(|f| combo_to_file(f)).collect()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Decoration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        // The arity is not part of the file; it is fixed up from the facet label.
        let to_combo = |terms: Vec<(Vec<u32>, i64)>| -> Result<SchurCombo, D::Error> {
            let mut out = Vec::new();
            for (rows, k) in terms {
                let yd = YoungDiagram::new(rows).map_err(serde::de::Error::custom)?;
                out.push((yd, num_bigint::BigInt::from(k)));
            }
            Ok(SchurCombo::from_terms(0, out))
        };
        match DecorationFile::deserialize(d)? {
            DecorationFile::Single(t) => Ok(Decoration { factors: vec![to_combo(t)?] }),
            DecorationFile::Product(ts) => {
                Ok(Decoration { factors: ts.into_iter().map(to_combo).collect::<Result<_, _>>()? })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub id: usize,
    pub label: usize,
    pub genus: usize,
    /// Boundary circles, each a cyclic list of `(arc, side slot)`.
    #[serde(default)]
    pub boundary: Vec<Vec<(usize, usize)>>,
    #[serde(default)]
    pub decoration: Decoration,
}

impl Facet {
    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BindingArc {
    pub id: usize,
    pub kind: ArcKind,
    /// `[thin, thin, thick]` facet ids in the cyclic order around the binding.
    pub sides: [usize; 3],
    /// `[start, end]` singular points along the binding orientation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub id: usize,
    /// Four `(arc, end)` references; end 0 is the start of the arc, 1 its end.
    pub incident: [(usize, usize); 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Foam {
    pub n: usize,
    pub facets: Vec<Facet>,
    #[serde(default)]
    pub arcs: Vec<BindingArc>,
    #[serde(default)]
    pub points: Vec<SingularPoint>,
}

/// One violation found by [`validate_foam`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub location: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }

    fn push(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.issues.push(Issue { location: location.into(), message: message.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        for (k, i) in self.issues.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// An arc-side together with the end of the arc it touches.
type SideEnd = (usize, usize, usize);

/// The local data at a singular point: which incident arc plays which role
/// in the tetrahedral model, and the labels `(a, b, c)`.
///
/// Roles: 0 is `(a, b) -> a+b`, 1 is `(a+b, c) -> a+b+c`, 2 is
/// `(b, c) -> b+c`, 3 is `(a, b+c) -> a+b+c`. `slots[r]` lists the side slots
/// of role `r`'s arc as `[first thin, second thin, thick]` in model order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointRoles {
    pub arcs: [(usize, usize); 4],
    pub slots: [[usize; 3]; 4],
    pub labels: (usize, usize, usize),
}

/// Germ pairs of the tetrahedral model, as ((role, model slot), (role, model slot)).
const GERMS: [((usize, usize), (usize, usize)); 6] = [
    ((0, 0), (3, 0)), // a
    ((0, 1), (2, 0)), // b
    ((1, 1), (2, 1)), // c
    ((0, 2), (1, 0)), // a+b
    ((2, 2), (3, 1)), // b+c
    ((1, 2), (3, 2)), // a+b+c
];

impl PointRoles {
    /// The six germ pairs as pairs of `(arc, slot, end)`.
    pub fn germ_pairs(&self) -> Vec<(SideEnd, SideEnd)> {
        GERMS
            .iter()
            .map(|&((r1, m1), (r2, m2))| {
                let (a1, e1) = self.arcs[r1];
                let (a2, e2) = self.arcs[r2];
                ((a1, self.slots[r1][m1], e1), (a2, self.slots[r2][m2], e2))
            })
            .collect()
    }

    /// The fourth label `d = N - a - b - c`.
    pub fn fourth(&self, n: usize) -> i64 {
        n as i64 - (self.labels.0 + self.labels.1 + self.labels.2) as i64
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&x| seen[x] = true);
                    if seen.iter().all(|&s| s) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

impl Foam {
    pub fn label(&self, f: usize) -> usize {
        self.facets[f].label
    }

    /// Segment of the boundary of `arc.sides[slot]` along `arc`: the
    /// `(entry end, exit end)` of the arc in the facet's boundary direction.
    /// Thin facets run along the binding orientation, the thick facet against it.
    pub fn side_direction(slot: usize) -> (usize, usize) {
        if slot < 2 {
            (0, 1)
        } else {
            (1, 0)
        }
    }

    /// Germ pairs read off from the facet boundaries: at every singular
    /// point, the consecutive arc-sides of a boundary circle meeting there.
    pub fn boundary_germs(&self) -> Result<Vec<Vec<(SideEnd, SideEnd)>>, String> {
        let mut out = vec![Vec::new(); self.points.len()];
        for f in &self.facets {
            for (ci, circle) in f.boundary.iter().enumerate() {
                let len = circle.len();
                for k in 0..len {
                    let (a1, s1) = circle[k];
                    let (a2, s2) = circle[(k + 1) % len];
                    let arc1 = self.arcs.get(a1).ok_or(format!("facet {} circle {ci}: no arc {a1}", f.id))?;
                    if arc1.kind == ArcKind::Circle {
                        continue;
                    }
                    let arc2 = self.arcs.get(a2).ok_or(format!("facet {} circle {ci}: no arc {a2}", f.id))?;
                    let e1 = Self::side_direction(s1).1;
                    let e2 = Self::side_direction(s2).0;
                    let (Some(ep1), Some(ep2)) = (arc1.endpoints, arc2.endpoints) else {
                        return Err(format!("facet {} circle {ci}: arc without endpoints", f.id));
                    };
                    if ep1[e1] != ep2[e2] {
                        return Err(format!(
                            "facet {} circle {ci}: arc {a1} exits at point {} but arc {a2} enters at point {}",
                            f.id, ep1[e1], ep2[e2]
                        ));
                    }
                    let p = ep1[e1];
                    if p >= self.points.len() {
                        return Err(format!("facet {} circle {ci}: no point {p}", f.id));
                    }
                    out[p].push(((a1, s1, e1), (a2, s2, e2)));
                }
            }
        }
        Ok(out)
    }

    /// Finds the tetrahedral role assignment at point `p`. When `germs` is
    /// given the assignment must reproduce exactly those germ pairs;
    /// otherwise germs are matched by facet ids.
    pub fn point_roles(&self, p: usize, germs: Option<&[(SideEnd, SideEnd)]>) -> Option<PointRoles> {
        let pt = self.points.get(p)?;
        let want: Option<BTreeSet<(SideEnd, SideEnd)>> = germs.map(|g| {
            g.iter().map(|&(x, y)| if x <= y { (x, y) } else { (y, x) }).collect()
        });
        for perm in permutations4() {
            let arcs = [pt.incident[perm[0]], pt.incident[perm[1]], pt.incident[perm[2]], pt.incident[perm[3]]];
            if arcs.iter().any(|&(a, _)| a >= self.arcs.len()) {
                return None;
            }
            for swaps in 0..16u32 {
                let mut slots = [[0usize; 3]; 4];
                for r in 0..4 {
                    slots[r] = if swaps >> r & 1 == 1 { [1, 0, 2] } else { [0, 1, 2] };
                }
                let lab = |r: usize, m: usize| self.label(self.arcs[arcs[r].0].sides[slots[r][m]]);
                let (a, b, c) = (lab(0, 0), lab(0, 1), lab(1, 1));
                if a == 0 || b == 0 || c == 0 {
                    continue;
                }
                let ok_labels = lab(0, 2) == a + b
                    && lab(1, 0) == a + b
                    && lab(1, 2) == a + b + c
                    && lab(2, 0) == b
                    && lab(2, 1) == c
                    && lab(2, 2) == b + c
                    && lab(3, 0) == a
                    && lab(3, 1) == b + c
                    && lab(3, 2) == a + b + c;
                if !ok_labels {
                    continue;
                }
                let roles = PointRoles { arcs, slots, labels: (a, b, c) };
                let matched = match &want {
                    Some(w) => {
                        let got: BTreeSet<(SideEnd, SideEnd)> = roles
                            .germ_pairs()
                            .into_iter()
                            .map(|(x, y)| if x <= y { (x, y) } else { (y, x) })
                            .collect();
                        &got == w
                    }
                    None => roles.germ_pairs().iter().all(|&((a1, s1, _), (a2, s2, _))| {
                        self.arcs[a1].sides[s1] == self.arcs[a2].sides[s2]
                    }),
                };
                if matched {
                    return Some(roles);
                }
            }
        }
        None
    }

    /// Checks that the cyclic orders of the four arcs at a singular point
    /// induce a planar rotation system on the link (a tetrahedron).
    pub fn cyclic_compatible(&self, roles: &PointRoles) -> bool {
        // Link vertices: roles 0..4. Link edges: the six germs.
        // Rotation at a vertex: the cyclic order of its arc seen from outside.
        let mut germ_of = BTreeMap::new();
        for (g, &((r1, m1), (r2, m2))) in GERMS.iter().enumerate() {
            germ_of.insert((r1, roles.slots[r1][m1]), g);
            germ_of.insert((r2, roles.slots[r2][m2]), g);
        }
        let mut rot: Vec<Vec<usize>> = Vec::new();
        for r in 0..4 {
            let mut order: Vec<usize> = (0..3).map(|s| germ_of[&(r, s)]).collect();
            if roles.arcs[r].1 == 1 {
                order.reverse();
            }
            rot.push(order);
        }
        let other_end = |g: usize, v: usize| -> usize {
            let ((r1, _), (r2, _)) = GERMS[g];
            if r1 == v {
                r2
            } else {
                r1
            }
        };
        let mut seen = BTreeSet::new();
        let mut faces = 0;
        for v in 0..4 {
            for g in rot[v].clone() {
                if seen.contains(&(v, g)) {
                    continue;
                }
                faces += 1;
                let (mut cv, mut cg) = (v, g);
                while seen.insert((cv, cg)) {
                    let w = other_end(cg, cv);
                    let pos = rot[w].iter().position(|&x| x == cg).unwrap();
                    cg = rot[w][(pos + 1) % 3];
                    cv = w;
                }
            }
        }
        faces == 4
    }

    /// Roles at every singular point, using the boundary germs.
    pub fn all_point_roles(&self) -> Result<Vec<PointRoles>, String> {
        let germs = self.boundary_germs()?;
        (0..self.points.len())
            .map(|p| {
                self.point_roles(p, Some(&germs[p]))
                    .ok_or(format!("point {p}: germs do not match the tetrahedral model"))
            })
            .collect()
    }
}

/// Checks every structural invariant of a closed foam and reports all violations.
pub fn validate_foam(f: &Foam) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let n = f.n;
    if n == 0 || n > MAX_N {
        rep.push("foam", format!("N = {n} outside 1..={MAX_N}"));
        return rep;
    }
    for (k, fc) in f.facets.iter().enumerate() {
        let loc = format!("facet {k}");
        if fc.id != k {
            rep.push(&loc, format!("id {} does not match position", fc.id));
        }
        if fc.label > n {
            rep.push(&loc, format!("label {} exceeds N = {n}", fc.label));
        }
        for (q, fac) in fc.decoration.factors.iter().enumerate() {
            if fac.arity != fc.label && !fac.is_one() {
                rep.push(&loc, format!("decoration factor {q} has arity {} but label is {}", fac.arity, fc.label));
            }
            if let Err(e) = fac.validate(Convention::Conjugate) {
                rep.push(&loc, format!("decoration factor {q}: {e}"));
            }
        }
    }
    let mut used: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, fc) in f.facets.iter().enumerate() {
        for circle in &fc.boundary {
            if circle.is_empty() {
                rep.push(format!("facet {k}"), "empty boundary circle");
            }
            for &(a, s) in circle {
                *used.entry((a, s)).or_default() += 1;
                match f.arcs.get(a) {
                    None => rep.push(format!("facet {k}"), format!("boundary refers to missing arc {a}")),
                    Some(arc) => {
                        if s > 2 {
                            rep.push(format!("facet {k}"), format!("bad side slot {s}"));
                        } else if arc.sides[s] != k {
                            rep.push(
                                format!("facet {k}"),
                                format!("boundary claims arc {a} slot {s}, which belongs to facet {}", arc.sides[s]),
                            );
                        }
                    }
                }
            }
            if circle.len() > 1 && circle.iter().any(|&(a, _)| f.arcs.get(a).map(|x| x.kind) == Some(ArcKind::Circle)) {
                rep.push(format!("facet {k}"), "a circle arc must form a boundary circle by itself");
            }
        }
    }
    for ((a, s), cnt) in &used {
        if *cnt > 1 {
            rep.push(format!("arc {a} slot {s}"), format!("referenced {cnt} times by facet boundaries"));
        }
    }
    for (k, arc) in f.arcs.iter().enumerate() {
        let loc = format!("arc {k}");
        if arc.id != k {
            rep.push(&loc, format!("id {} does not match position", arc.id));
        }
        if arc.sides.iter().any(|&s| s >= f.facets.len()) {
            rep.push(&loc, "side refers to a missing facet");
            continue;
        }
        let l = arc.sides.map(|s| f.facets[s].label);
        if l[0] + l[1] != l[2] {
            rep.push(&loc, format!("label flow fails: {} + {} != {}", l[0], l[1], l[2]));
        }
        for s in 0..3 {
            if !used.contains_key(&(k, s)) {
                rep.push(&loc, format!("slot {s} is not on any facet boundary"));
            }
        }
        match (arc.kind, arc.endpoints) {
            (ArcKind::Circle, Some(_)) => rep.push(&loc, "circle arc with endpoints"),
            (ArcKind::Interval, None) => rep.push(&loc, "interval arc without endpoints"),
            (ArcKind::Interval, Some([p, q])) => {
                if p == q {
                    rep.push(&loc, "both ends at the same singular point");
                }
                if p >= f.points.len() || q >= f.points.len() {
                    rep.push(&loc, "endpoint refers to a missing singular point");
                }
            }
            _ => {}
        }
    }
    let mut ends_seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, pt) in f.points.iter().enumerate() {
        let loc = format!("point {k}");
        if pt.id != k {
            rep.push(&loc, format!("id {} does not match position", pt.id));
        }
        for &(a, e) in &pt.incident {
            *ends_seen.entry((a, e)).or_default() += 1;
            match f.arcs.get(a) {
                Some(arc) if e < 2 && arc.endpoints.map(|x| x[e]) == Some(k) => {}
                _ => rep.push(&loc, format!("incident arc end ({a}, {e}) does not end here")),
            }
        }
    }
    for (k, arc) in f.arcs.iter().enumerate() {
        if arc.kind == ArcKind::Interval {
            for e in 0..2 {
                if ends_seen.get(&(k, e)).copied().unwrap_or(0) != 1 {
                    rep.push(format!("arc {k}"), format!("end {e} is not listed exactly once at its point"));
                }
            }
        }
    }
    if !rep.is_ok() {
        return rep;
    }
    match f.boundary_germs() {
        Err(e) => rep.push("boundary", e),
        Ok(germs) => {
            for p in 0..f.points.len() {
                if germs[p].len() != 6 {
                    rep.push(format!("point {p}"), format!("{} facet germs instead of 6", germs[p].len()));
                    continue;
                }
                match f.point_roles(p, Some(&germs[p])) {
                    None => rep.push(format!("point {p}"), "facet germs do not realize the tetrahedral model"),
                    Some(r) => {
                        if !f.cyclic_compatible(&r) {
                            rep.push(format!("point {p}"), "cyclic orders of the four arcs are incompatible");
                        }
                    }
                }
            }
        }
    }
    for (k, fc) in f.facets.iter().enumerate() {
        let c = fc.euler();
        if c > 2 {
            rep.push(format!("facet {k}"), format!("Euler characteristic {c}"));
        }
    }
    rep
}

/// The degree `d_N(F)`, decorations included. `None` when a decoration is
/// not homogeneous.
pub fn foam_degree(f: &Foam) -> Option<i64> {
    let n = f.n as i64;
    let mut d = 0i64;
    for fc in &f.facets {
        let a = fc.label as i64;
        d -= a * (n - a) * fc.euler();
        d += fc.decoration.graded_degree()?;
    }
    for arc in &f.arcs {
        if arc.kind == ArcKind::Interval {
            let a = f.label(arc.sides[0]) as i64;
            let b = f.label(arc.sides[1]) as i64;
            d += a * b + (a + b) * (n - a - b);
        }
    }
    let roles = f.all_point_roles().ok()?;
    for r in roles {
        let (a, b, c) = (r.labels.0 as i64, r.labels.1 as i64, r.labels.2 as i64);
        let dd = r.fourth(f.n);
        d -= a * b + b * c + c * dd + dd * a + a * c + b * dd;
    }
    Some(d)
}

/// A coloring: the pigment set of every facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring(pub Vec<PigSet>);

impl Coloring {
    pub fn get(&self, f: usize) -> PigSet {
        self.0[f]
    }

    pub fn has(&self, f: usize, pigment: usize) -> bool {
        self.0[f] >> (pigment - 1) & 1 == 1
    }
}

/// Checks the flow condition and set sizes.
pub fn check_coloring(f: &Foam, c: &Coloring) -> Result<(), FoamError> {
    if c.0.len() != f.facets.len() {
        return Err(FoamError::BadColoring("wrong number of facets".into()));
    }
    let full: PigSet = if f.n >= 32 { u32::MAX } else { (1u32 << f.n) - 1 };
    for (k, fc) in f.facets.iter().enumerate() {
        if c.0[k] & !full != 0 || c.0[k].count_ones() as usize != fc.label {
            return Err(FoamError::BadColoring(format!("facet {k} has a set of the wrong size")));
        }
    }
    for arc in &f.arcs {
        let [x, y, z] = arc.sides.map(|s| c.0[s]);
        if x & y != 0 || x | y != z {
            return Err(FoamError::BadColoring(format!("flow fails at arc {}", arc.id)));
        }
    }
    Ok(())
}

/// All colorings, in a deterministic order, by backtracking over facets in
/// breadth-first order and propagating forced sets along arcs.
pub fn enumerate_colorings(f: &Foam) -> Vec<Coloring> {
    let nf = f.facets.len();
    let mut arcs_of: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for (k, arc) in f.arcs.iter().enumerate() {
        for &s in &arc.sides {
            if !arcs_of[s].contains(&k) {
                arcs_of[s].push(k);
            }
        }
    }
    let mut order = Vec::with_capacity(nf);
    let mut seen = vec![false; nf];
    for start in 0..nf {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &a in &arcs_of[x] {
                for &s in &f.arcs[a].sides {
                    if !seen[s] {
                        seen[s] = true;
                        queue.push_back(s);
                    }
                }
            }
        }
    }
    let subsets: Vec<Vec<PigSet>> = (0..=f.n)
        .map(|k| (0u32..(1u32 << f.n)).filter(|m| m.count_ones() as usize == k).collect())
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<Option<PigSet>> = vec![None; nf];
    backtrack(f, &order, 0, &arcs_of, &subsets, &mut cur, &mut out);
    out
}

fn consistent(f: &Foam, arcs: &[usize], cur: &[Option<PigSet>]) -> bool {
    for &a in arcs {
        let [x, y, z] = f.arcs[a].sides.map(|s| cur[s]);
        if let (Some(x), Some(y)) = (x, y) {
            if x & y != 0 {
                return false;
            }
        }
        if let (Some(x), Some(z)) = (x, z) {
            if x & !z != 0 {
                return false;
            }
        }
        if let (Some(y), Some(z)) = (y, z) {
            if y & !z != 0 {
                return false;
            }
        }
        if let (Some(x), Some(y), Some(z)) = (x, y, z) {
            if x | y != z {
                return false;
            }
        }
    }
    true
}

fn backtrack(
    f: &Foam,
    order: &[usize],
    k: usize,
    arcs_of: &[Vec<usize>],
    subsets: &[Vec<PigSet>],
    cur: &mut Vec<Option<PigSet>>,
    out: &mut Vec<Coloring>,
) {
    if k == order.len() {
        out.push(Coloring(cur.iter().map(|x| x.unwrap()).collect()));
        return;
    }
    let fid = order[k];
    // A set forced by an arc whose other two sides are already colored.
    let mut forced: Option<PigSet> = None;
    for &a in &arcs_of[fid] {
        let sides = f.arcs[a].sides;
        let vals = sides.map(|s| cur[s]);
        for slot in 0..3 {
            if sides[slot] != fid {
                continue;
            }
            let others: Vec<usize> = (0..3).filter(|&t| t != slot).collect();
            if let (Some(u), Some(v)) = (vals[others[0]], vals[others[1]]) {
                let want = if slot == 2 { u | v } else { v & !u };
                if forced.is_some_and(|x| x != want) {
                    return;
                }
                forced = Some(want);
            }
        }
    }
    let label = f.facets[fid].label;
    let candidates: Vec<PigSet> = match forced {
        Some(x) if x.count_ones() as usize == label => vec![x],
        Some(_) => return,
        None => subsets[label].clone(),
    };
    for s in candidates {
        cur[fid] = Some(s);
        if consistent(f, &arcs_of[fid], cur) {
            backtrack(f, order, k + 1, arcs_of, subsets, cur, out);
        }
        cur[fid] = None;
    }
}

/// Euler characteristic of the closure of the union of the facets selected by
/// `pred`: facets contribute their χ, each interval arc lying in the closure
/// subtracts one and each singular point adds one.
fn closure_euler(f: &Foam, pred: impl Fn(usize) -> bool) -> i64 {
    let mut chi = 0;
    for (k, fc) in f.facets.iter().enumerate() {
        if pred(k) {
            chi += fc.euler();
        }
    }
    for arc in &f.arcs {
        if arc.kind == ArcKind::Interval && arc.sides.iter().any(|&s| pred(s)) {
            chi -= 1;
        }
    }
    for (k, _) in f.points.iter().enumerate() {
        let touches = f.arcs.iter().any(|arc| {
            arc.endpoints.is_some_and(|e| e.contains(&k)) && arc.sides.iter().any(|&s| pred(s))
        });
        if touches {
            chi += 1;
        }
    }
    chi
}

fn check_pigment(f: &Foam, i: usize) -> Result<(), FoamError> {
    if i == 0 || i > f.n {
        return Err(FoamError::BadPigments(i, i));
    }
    Ok(())
}

/// χ of the monochrome surface `F_i(c)`.
pub fn monochrome_euler(f: &Foam, c: &Coloring, i: usize) -> Result<i64, FoamError> {
    check_pigment(f, i)?;
    let chi = closure_euler(f, |k| c.has(k, i));
    if chi % 2 != 0 {
        return Err(FoamError::OddEuler { what: format!("F_{i}"), chi });
    }
    Ok(chi)
}

/// χ of `F_{i∩j}(c)`, the facets containing both pigments.
pub fn intersection_euler(f: &Foam, c: &Coloring, i: usize, j: usize) -> Result<i64, FoamError> {
    check_pigment(f, i)?;
    check_pigment(f, j)?;
    Ok(closure_euler(f, |k| c.has(k, i) && c.has(k, j)))
}

/// χ of the bichrome surface `F_ij(c)` computed directly: facets containing
/// exactly one of the two pigments.
pub fn bichrome_euler_direct(f: &Foam, c: &Coloring, i: usize, j: usize) -> Result<i64, FoamError> {
    check_pigment(f, i)?;
    check_pigment(f, j)?;
    Ok(closure_euler(f, |k| c.has(k, i) != c.has(k, j)))
}

/// χ of the bichrome surface via `χ(F_i) + χ(F_j) − 2χ(F_{i∩j})`.
pub fn bichrome_euler(f: &Foam, c: &Coloring, i: usize, j: usize) -> Result<i64, FoamError> {
    let chi = monochrome_euler(f, c, i)? + monochrome_euler(f, c, j)? - 2 * intersection_euler(f, c, i, j)?;
    if chi % 2 != 0 {
        return Err(FoamError::OddEuler { what: format!("F_{i}{j}"), chi });
    }
    Ok(chi)
}

/// Minimal union-find.
#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let nx = self.parent[y];
            self.parent[y] = r;
            y = nx;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Classifies an arc for the pigment pair: `Some(true)` if it separates with
/// `i` on one thin side and `j` on the other in the stored order
/// `(i-facet, j-facet, ij-facet)`, `Some(false)` for the opposite order.
fn separating(f: &Foam, c: &Coloring, arc: &BindingArc, i: usize, j: usize) -> Option<bool> {
    let [x, y, _] = arc.sides;
    let (xi, xj, yi, yj) = (c.has(x, i), c.has(x, j), c.has(y, i), c.has(y, j));
    let _ = f;
    if xi && !xj && yj && !yi {
        Some(true)
    } else if xj && !xi && yi && !yj {
        Some(false)
    } else {
        None
    }
}

/// Numbers of positive and negative circles of `F_i ∩ F_j ∩ F_ij`.
pub fn theta_counts(f: &Foam, c: &Coloring, i: usize, j: usize) -> Result<(usize, usize), FoamError> {
    if i == 0 || i >= j || j > f.n {
        return Err(FoamError::BadPigments(i, j));
    }
    let sep: Vec<Option<bool>> = f.arcs.iter().map(|a| separating(f, c, a, i, j)).collect();
    let mut per_point = vec![Vec::new(); f.points.len()];
    for (k, arc) in f.arcs.iter().enumerate() {
        if sep[k].is_some() {
            if let Some([p, q]) = arc.endpoints {
                per_point[p].push(k);
                per_point[q].push(k);
            }
        }
    }
    let mut dsu = Dsu::new(f.arcs.len());
    for (p, arcs) in per_point.iter().enumerate() {
        match arcs.len() {
            0 => {}
            2 => {
                dsu.union(arcs[0], arcs[1]);
            }
            _ => return Err(FoamError::BadCircleStructure { point: p, i, j }),
        }
    }
    let mut sign_of: BTreeMap<usize, bool> = BTreeMap::new();
    for (k, s) in sep.iter().enumerate() {
        if let Some(s) = *s {
            let r = dsu.find(k);
            if let Some(prev) = sign_of.insert(r, s) {
                if prev != s {
                    return Err(FoamError::InconsistentCircle { i, j });
                }
            }
        }
    }
    let pos = sign_of.values().filter(|&&s| s).count();
    Ok((pos, sign_of.len() - pos))
}

/// A connected component of a bichrome surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KempeComponent {
    pub id: usize,
    pub facets: Vec<usize>,
    pub euler: i64,
}

/// Connected components of `F_ij(c)`, ordered by smallest facet id.
pub fn kempe_components(f: &Foam, c: &Coloring, i: usize, j: usize) -> Result<Vec<KempeComponent>, FoamError> {
    check_pigment(f, i)?;
    check_pigment(f, j)?;
    if i == j {
        return Err(FoamError::BadPigments(i, j));
    }
    let inside = |k: usize| c.has(k, i) != c.has(k, j);
    let mut dsu = Dsu::new(f.facets.len());
    // At a binding, the bichrome surface continues through exactly the two
    // sides containing exactly one of the pigments.
    for arc in &f.arcs {
        let ins: Vec<usize> = arc.sides.iter().copied().filter(|&s| inside(s)).collect();
        for w in ins.windows(2) {
            dsu.union(w[0], w[1]);
        }
    }
    // Singular points are covered by the arcs through them.
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..f.facets.len() {
        if inside(k) {
            groups.entry(dsu.find(k)).or_default().push(k);
        }
    }
    let mut out = Vec::new();
    for (id, facets) in groups.into_values().enumerate() {
        let set: BTreeSet<usize> = facets.iter().copied().collect();
        let euler = closure_euler(f, |k| set.contains(&k));
        out.push(KempeComponent { id, facets, euler });
    }
    Ok(out)
}

/// Exchanges pigments `i` and `j` on one bichrome component.
pub fn apply_kempe(f: &Foam, c: &Coloring, i: usize, j: usize, component: usize) -> Result<Coloring, FoamError> {
    let comps = kempe_components(f, c, i, j)?;
    let comp = comps.get(component).ok_or(FoamError::NoComponent(component))?;
    let (bi, bj) = (1u32 << (i - 1), 1u32 << (j - 1));
    let mut out = c.clone();
    for &k in &comp.facets {
        let s = out.0[k];
        let hi = s & bi != 0;
        let hj = s & bj != 0;
        let mut t = s & !(bi | bj);
        if hi {
            t |= bj;
        }
        if hj {
            t |= bi;
        }
        out.0[k] = t;
    }
    check_coloring(f, &out)?;
    Ok(out)
}

/// Removes facets labeled 0 together with their bindings. A binding with a
/// 0-labeled thin side just joins the other two sides, which merge into one
/// facet. Only valid for foams without singular points touching 0-facets.
pub fn strip_zero_facets(f: &Foam) -> Result<Foam, FoamError> {
    let zero: Vec<bool> = f.facets.iter().map(|x| x.label == 0).collect();
    if !zero.iter().any(|&z| z) {
        return Ok(f.clone());
    }
    for arc in &f.arcs {
        if arc.kind == ArcKind::Interval && arc.sides.iter().any(|&s| zero[s]) {
            return Err(FoamError::Invalid("0-facet touching a singular point".into()));
        }
    }
    // Merge the two nonzero sides of each binding with a 0-labeled side.
    let mut dsu = Dsu::new(f.facets.len());
    let mut dropped_arcs = BTreeSet::new();
    for arc in &f.arcs {
        let [x, y, z] = arc.sides;
        if zero[x] && zero[y] {
            dropped_arcs.insert(arc.id);
        } else if zero[x] {
            dsu.union(y, z);
            dropped_arcs.insert(arc.id);
        } else if zero[y] {
            dsu.union(x, z);
            dropped_arcs.insert(arc.id);
        }
    }
    // Each merged facet: χ is the sum (gluing along circles adds nothing);
    // the circles through dropped arcs disappear from the boundary.
    let mut new_id = BTreeMap::new();
    let mut facets: Vec<Facet> = Vec::new();
    for (k, fc) in f.facets.iter().enumerate() {
        if zero[k] {
            continue;
        }
        let r = dsu.find(k);
        if !new_id.contains_key(&r) {
            new_id.insert(r, facets.len());
            facets.push(Facet {
                id: facets.len(),
                label: fc.label,
                genus: 0,
                boundary: Vec::new(),
                decoration: Decoration::one(),
            });
        }
    }
    let mut chi: BTreeMap<usize, i64> = BTreeMap::new();
    for (k, fc) in f.facets.iter().enumerate() {
        if zero[k] {
            continue;
        }
        let t = new_id[&dsu.find(k)];
        *chi.entry(t).or_default() += fc.euler();
        facets[t].decoration = facets[t].decoration.times(&fc.decoration);
    }
    let mut arc_id = BTreeMap::new();
    let mut arcs = Vec::new();
    for arc in &f.arcs {
        if dropped_arcs.contains(&arc.id) {
            continue;
        }
        arc_id.insert(arc.id, arcs.len());
        arcs.push(BindingArc {
            id: arcs.len(),
            kind: arc.kind,
            sides: arc.sides.map(|s| new_id[&dsu.find(s)]),
            endpoints: arc.endpoints,
        });
    }
    for (k, fc) in f.facets.iter().enumerate() {
        if zero[k] {
            continue;
        }
        let t = new_id[&dsu.find(k)];
        for circle in &fc.boundary {
            if circle.iter().any(|(a, _)| dropped_arcs.contains(a)) {
                continue;
            }
            facets[t].boundary.push(circle.iter().map(|&(a, s)| (arc_id[&a], s)).collect());
        }
    }
    for (t, fc) in facets.iter_mut().enumerate() {
        let g2 = 2 - fc.boundary.len() as i64 - chi[&t];
        if g2 < 0 || g2 % 2 != 0 {
            return Err(FoamError::Invalid(format!("merged facet {t} has inconsistent Euler characteristic")));
        }
        fc.genus = (g2 / 2) as usize;
    }
    Ok(Foam { n: f.n, facets, arcs, points: f.points.clone() })
}

/// `line L, column C: message` for a JSON syntax or shape error.
pub fn json_error(e: &serde_json::Error) -> String {
    let full = e.to_string();
    let tail = format!(" at line {} column {}", e.line(), e.column());
    let msg = full.strip_suffix(&tail).unwrap_or(&full);
    format!("line {}, column {}: {msg}", e.line(), e.column())
}

/// Reads a foam from its JSON form and fixes decoration arities from labels.
pub fn foam_from_json(s: &str) -> Result<Foam, String> {
    let mut f: Foam = serde_json::from_str(s).map_err(|e| json_error(&e))?;
    for fc in &mut f.facets {
        for fac in &mut fc.decoration.factors {
            fac.arity = fc.label;
        }
        fc.decoration.factors.retain(|x| !x.is_one());
    }
    Ok(f)
}

pub fn foam_to_json(f: &Foam) -> String {
    serde_json::to_string_pretty(f).expect("foam serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(n: usize) -> Foam {
        Foam {
            n,
            facets: vec![
                Facet { id: 0, label: 1, genus: 0, boundary: vec![vec![(0, 0)]], decoration: Decoration::one() },
                Facet { id: 1, label: 1, genus: 0, boundary: vec![vec![(0, 1)]], decoration: Decoration::one() },
                Facet { id: 2, label: 2, genus: 0, boundary: vec![vec![(0, 2)]], decoration: Decoration::one() },
            ],
            arcs: vec![BindingArc { id: 0, kind: ArcKind::Circle, sides: [0, 1, 2], endpoints: None }],
            points: vec![],
        }
    }

    #[test]
    fn theta_is_valid_and_counts() {
        let f = theta(2);
        assert!(validate_foam(&f).is_ok(), "{}", validate_foam(&f));
        assert_eq!(foam_degree(&f), Some(-2));
        let cs = enumerate_colorings(&f);
        assert_eq!(cs.len(), 2);
        let c = cs.iter().find(|c| c.0[0] == 1).unwrap();
        assert_eq!(monochrome_euler(&f, c, 1).unwrap(), 2);
        assert_eq!(intersection_euler(&f, c, 1, 2).unwrap(), 1);
        assert_eq!(bichrome_euler(&f, c, 1, 2).unwrap(), 2);
        assert_eq!(bichrome_euler_direct(&f, c, 1, 2).unwrap(), 2);
        assert_eq!(theta_counts(&f, c, 1, 2).unwrap(), (1, 0));
        let d = cs.iter().find(|c| c.0[0] == 2).unwrap();
        assert_eq!(theta_counts(&f, d, 1, 2).unwrap(), (0, 1));
        let comps = kempe_components(&f, c, 1, 2).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].euler, 2);
        assert_eq!(&apply_kempe(&f, c, 1, 2, 0).unwrap(), d);
        assert!(apply_kempe(&f, c, 1, 2, 1).is_err());
    }

    #[test]
    fn invalid_foams_are_reported() {
        let mut f = theta(3);
        f.facets[2].label = 3;
        let r = validate_foam(&f);
        assert!(r.issues.iter().any(|i| i.message.contains("label flow")));
        let mut g = theta(2);
        g.facets[1].boundary = vec![vec![(0, 0)]];
        let r = validate_foam(&g);
        assert!(r.issues.iter().any(|i| i.message.contains("referenced 2 times")));
    }

    #[test]
    fn colorings_of_simple_surfaces() {
        let sphere = Foam {
            n: 3,
            facets: vec![Facet { id: 0, label: 1, genus: 0, boundary: vec![], decoration: Decoration::one() }],
            arcs: vec![],
            points: vec![],
        };
        assert_eq!(enumerate_colorings(&sphere).len(), 3);
        let torus = Foam {
            n: 4,
            facets: vec![Facet { id: 0, label: 2, genus: 1, boundary: vec![], decoration: Decoration::one() }],
            arcs: vec![],
            points: vec![],
        };
        let cs = enumerate_colorings(&torus);
        assert_eq!(cs.len(), 6);
        assert_eq!(monochrome_euler(&torus, &cs[0], 1).unwrap_or(0), 0);
        assert_eq!(foam_degree(&torus), Some(0));
        // pigment absent everywhere gives the empty surface
        let c = Coloring(vec![0b0011]);
        assert_eq!(monochrome_euler(&torus, &c, 4).unwrap(), 0);
        assert_eq!(theta_counts(&torus, &c, 1, 2).unwrap(), (0, 0));
        assert!(kempe_components(&torus, &c, 1, 2).unwrap().is_empty());
    }

    #[test]
    fn json_round_trip() {
        let mut f = theta(2);
        f.facets[1].decoration = Decoration::single(1, YoungDiagram::from_rows(&[1]));
        let s = foam_to_json(&f);
        let g = foam_from_json(&s).unwrap();
        assert_eq!(f, g);
        assert!(foam_from_json("{\"n\": 2, \"facets\": [}").is_err());
    }
}
