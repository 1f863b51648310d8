//! Open foams built as movies of planar webs.
//!
//! A [`Movie`] starts from a planar web and applies elementary moves (circle
//! births and deaths, zips and unzips, digon births and deaths, and the
//! associativity moves that create singular points). It records the swept
//! surface as a cell complex, [`CellFoam`]. Cell complexes can be mirrored,
//! glued along matching boundary webs and closed up, and a closed complex
//! converts to a [`Foam`].
//!
//! Conventions. A web vertex stores its three half-edges in clockwise order
//! as seen from above. The facet swept by a web edge is oriented by (edge
//! direction, up). A binding is oriented upwards at a merge vertex and
//! downwards at a split vertex. Its cyclic order is the clockwise rotation at
//! a merge and the reversed rotation at a split.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::foamcore::{ArcKind, BindingArc, Decoration, Dsu, Facet, Foam, SingularPoint};
use crate::schur::SchurCombo;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MovieError {
    #[error("web: {0}")]
    Web(String),
    #[error("move not applicable: {0}")]
    Move(String),
    #[error("gluing: {0}")]
    Glue(String),
    #[error("not a closed foam: {0}")]
    Convert(String),
}

type R<T> = Result<T, MovieError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Half {
    pub edge: usize,
    pub at_head: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WEdge {
    pub label: usize,
    pub tail: Option<usize>,
    pub head: Option<usize>,
    cell: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WVert {
    pub merge: bool,
    /// Clockwise rotation, starting with the thick half-edge.
    pub rot: [Half; 3],
    cell: usize,
}

/// A planar trivalent web with a rotation system. Circles carry no vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Web {
    pub edges: Vec<Option<WEdge>>,
    pub verts: Vec<Option<WVert>>,
}

impl Web {
    pub fn new() -> Self {
        Web::default()
    }

    pub fn edge(&self, e: usize) -> R<&WEdge> {
        self.edges.get(e).and_then(|x| x.as_ref()).ok_or(MovieError::Web(format!("no edge {e}")))
    }

    pub fn vert(&self, v: usize) -> R<&WVert> {
        self.verts.get(v).and_then(|x| x.as_ref()).ok_or(MovieError::Web(format!("no vertex {v}")))
    }

    pub fn label(&self, e: usize) -> usize {
        self.edges[e].as_ref().map(|x| x.label).unwrap_or(0)
    }

    pub fn live_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].is_some()).collect()
    }

    pub fn live_verts(&self) -> Vec<usize> {
        (0..self.verts.len()).filter(|&v| self.verts[v].is_some()).collect()
    }

    /// Adds a vertex; its rotation is set later by [`Web::set_rot`].
    pub fn add_vertex(&mut self, merge: bool) -> usize {
        let h = Half { edge: usize::MAX, at_head: false };
        self.verts.push(Some(WVert { merge, rot: [h; 3], cell: usize::MAX }));
        self.verts.len() - 1
    }

    pub fn add_edge(&mut self, label: usize, tail: usize, head: usize) -> usize {
        self.edges.push(Some(WEdge { label, tail: Some(tail), head: Some(head), cell: usize::MAX }));
        self.edges.len() - 1
    }

    pub fn add_circle(&mut self, label: usize) -> usize {
        self.edges.push(Some(WEdge { label, tail: None, head: None, cell: usize::MAX }));
        self.edges.len() - 1
    }

    /// Sets the clockwise rotation at `v` from three edge ids, thick edge first.
    pub fn set_rot(&mut self, v: usize, edges: [usize; 3]) -> R<()> {
        let mut rot = [Half { edge: 0, at_head: false }; 3];
        for (k, &e) in edges.iter().enumerate() {
            let we = self.edge(e)?;
            let at_head = we.head == Some(v);
            if !at_head && we.tail != Some(v) {
                return Err(MovieError::Web(format!("edge {e} does not meet vertex {v}")));
            }
            rot[k] = Half { edge: e, at_head };
        }
        self.verts[v].as_mut().unwrap().rot = rot;
        Ok(())
    }

    /// Checks labels and orientations at every vertex.
    pub fn check(&self, n: usize) -> R<()> {
        for e in self.live_edges() {
            let we = self.edge(e)?;
            if we.label == 0 || we.label > n {
                return Err(MovieError::Web(format!("edge {e} has label {}", we.label)));
            }
            if we.tail.is_some() != we.head.is_some() {
                return Err(MovieError::Web(format!("edge {e} has one free end")));
            }
        }
        for v in self.live_verts() {
            let wv = self.vert(v)?;
            let thick = wv.rot[0];
            let thin = [wv.rot[1], wv.rot[2]];
            // At a merge the thick edge leaves and the thin ones arrive.
            let want_thick_at_head = !wv.merge;
            if thick.at_head != want_thick_at_head || thin.iter().any(|h| h.at_head == want_thick_at_head) {
                return Err(MovieError::Web(format!("vertex {v}: orientations do not match its type")));
            }
            if self.label(thick.edge) != self.label(thin[0].edge) + self.label(thin[1].edge) {
                return Err(MovieError::Web(format!("vertex {v}: label flow fails")));
            }
            for h in &wv.rot {
                let we = self.edge(h.edge)?;
                let end = if h.at_head { we.head } else { we.tail };
                if end != Some(v) {
                    return Err(MovieError::Web(format!("vertex {v}: stale half-edge {}", h.edge)));
                }
            }
        }
        Ok(())
    }

    fn replace_half(&mut self, v: usize, old: Half, new: Half) -> R<()> {
        let wv = self.verts[v].as_mut().ok_or(MovieError::Web(format!("no vertex {v}")))?;
        let slot = wv
            .rot
            .iter()
            .position(|&h| h == old)
            .ok_or(MovieError::Web(format!("vertex {v} has no half-edge {}", old.edge)))?;
        wv.rot[slot] = new;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cell {
    Edge(usize),
    Vert(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFace {
    pub label: usize,
    pub genus: usize,
    /// Boundary cycles of `(cell edge, forward?)`.
    pub cycles: Vec<Vec<(usize, bool)>>,
    pub decoration: Decoration,
}

/// A 2-complex swept by a movie, with named bottom and top boundary cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellFoam {
    pub n: usize,
    nverts: usize,
    /// Endpoints of each cell edge; `None` for a loop without vertices.
    edges: Vec<Option<(usize, usize)>>,
    pub faces: Vec<CFace>,
    /// Cyclic order of the three faces at a binding edge, relative to the
    /// binding's own orientation.
    orders: BTreeMap<usize, [usize; 3]>,
    vert_glue: Vec<(usize, usize)>,
    edge_glue: Vec<(usize, usize)>,
    pub bottom: BTreeMap<String, Cell>,
    pub top: BTreeMap<String, Cell>,
}

impl CellFoam {
    pub fn empty(n: usize) -> Self {
        CellFoam {
            n,
            nverts: 0,
            edges: Vec::new(),
            faces: Vec::new(),
            orders: BTreeMap::new(),
            vert_glue: Vec::new(),
            edge_glue: Vec::new(),
            bottom: BTreeMap::new(),
            top: BTreeMap::new(),
        }
    }

    fn new_vert(&mut self) -> usize {
        self.nverts += 1;
        self.nverts - 1
    }

    fn new_edge(&mut self, ends: Option<(usize, usize)>) -> usize {
        self.edges.push(ends);
        self.edges.len() - 1
    }

    fn new_face(&mut self, label: usize, cycles: Vec<Vec<(usize, bool)>>) -> usize {
        self.faces.push(CFace { label, genus: 0, cycles, decoration: Decoration::one() });
        self.faces.len() - 1
    }

    pub fn decorate(&mut self, face: usize, c: SchurCombo) {
        let d = Decoration::from_combo(c);
        self.faces[face].decoration = self.faces[face].decoration.times(&d);
    }

    /// The mirror image: every face reversed, bottom and top exchanged.
    pub fn mirror(&self) -> CellFoam {
        let mut m = self.clone();
        for f in &mut m.faces {
            for c in &mut f.cycles {
                c.reverse();
                for x in c.iter_mut() {
                    x.1 = !x.1;
                }
            }
        }
        std::mem::swap(&mut m.bottom, &mut m.top);
        m
    }

    /// Disjoint union; the cells of `o` are renumbered after those of `self`.
    /// Returns the face offset of `o`.
    fn absorb(&mut self, o: &CellFoam) -> (usize, usize, usize) {
        let (vo, eo, fo) = (self.nverts, self.edges.len(), self.faces.len());
        self.nverts += o.nverts;
        self.edges.extend(o.edges.iter().map(|x| x.map(|(a, b)| (a + vo, b + vo))));
        for f in &o.faces {
            let mut g = f.clone();
            for c in &mut g.cycles {
                for x in c.iter_mut() {
                    x.0 += eo;
                }
            }
            self.faces.push(g);
        }
        for (&e, ord) in &o.orders {
            self.orders.insert(e + eo, ord.map(|x| x + fo));
        }
        self.vert_glue.extend(o.vert_glue.iter().map(|&(a, b)| (a + vo, b + vo)));
        self.edge_glue.extend(o.edge_glue.iter().map(|&(a, b)| (a + eo, b + eo)));
        (vo, eo, fo)
    }

    fn shift(c: Cell, vo: usize, eo: usize) -> Cell {
        match c {
            Cell::Edge(e) => Cell::Edge(e + eo),
            Cell::Vert(v) => Cell::Vert(v + vo),
        }
    }

    fn identify(&mut self, a: Cell, b: Cell, name: &str) -> R<()> {
        match (a, b) {
            (Cell::Edge(x), Cell::Edge(y)) => {
                if self.edges[x].is_some() != self.edges[y].is_some() {
                    return Err(MovieError::Glue(format!("{name}: loop glued to an interval")));
                }
                self.edge_glue.push((x, y));
                if let (Some((a1, b1)), Some((a2, b2))) = (self.edges[x], self.edges[y]) {
                    self.vert_glue.push((a1, a2));
                    self.vert_glue.push((b1, b2));
                }
            }
            (Cell::Vert(x), Cell::Vert(y)) => self.vert_glue.push((x, y)),
            _ => return Err(MovieError::Glue(format!("{name}: edge glued to a vertex"))),
        }
        Ok(())
    }

    /// Stacks `upper` on top of `self`, gluing `self.top` to `upper.bottom` by name.
    pub fn compose(&self, upper: &CellFoam) -> R<CellFoam> {
        if self.n != upper.n {
            return Err(MovieError::Glue("different N".into()));
        }
        let names_a: BTreeSet<&String> = self.top.keys().collect();
        let names_b: BTreeSet<&String> = upper.bottom.keys().collect();
        if names_a != names_b {
            return Err(MovieError::Glue("boundary webs do not match".into()));
        }
        let mut out = self.clone();
        let (vo, eo, _) = out.absorb(upper);
        for (name, &ca) in &self.top {
            let cb = Self::shift(upper.bottom[name], vo, eo);
            out.identify(ca, cb, name)?;
        }
        out.top = upper.top.iter().map(|(k, &c)| (k.clone(), Self::shift(c, vo, eo))).collect();
        Ok(out)
    }

    /// Disjoint union of two complexes; boundary names of `o` get a prefix.
    pub fn disjoint(&self, o: &CellFoam) -> CellFoam {
        let mut out = self.clone();
        let (vo, eo, _) = out.absorb(o);
        for (k, &c) in &o.bottom {
            out.bottom.insert(format!("r.{k}"), Self::shift(c, vo, eo));
        }
        for (k, &c) in &o.top {
            out.top.insert(format!("r.{k}"), Self::shift(c, vo, eo));
        }
        out
    }

    /// Glues the top boundary to the bottom boundary.
    pub fn trace(&self) -> R<CellFoam> {
        let names_a: BTreeSet<&String> = self.top.keys().collect();
        let names_b: BTreeSet<&String> = self.bottom.keys().collect();
        if names_a != names_b {
            return Err(MovieError::Glue("top and bottom webs do not match".into()));
        }
        let mut out = self.clone();
        for (name, &ct) in &self.top {
            out.identify(ct, self.bottom[name], name)?;
        }
        out.top.clear();
        out.bottom.clear();
        Ok(out)
    }

    /// `self` glued along its top to the mirror image of `other`.
    pub fn double_with(&self, other: &CellFoam) -> R<CellFoam> {
        self.compose(&other.mirror())
    }

    /// Groups faces that meet along an interior (non-binding, non-boundary)
    /// edge: each group lies inside a single facet of any closure.
    pub fn face_classes(&self) -> Vec<Vec<usize>> {
        let mut ed = Dsu::new(self.edges.len());
        for &(a, b) in &self.edge_glue {
            ed.union(a, b);
        }
        let mut occ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, f) in self.faces.iter().enumerate() {
            for c in &f.cycles {
                for &(e, _) in c {
                    occ.entry(ed.find(e)).or_default().push(k);
                }
            }
        }
        let mut fd = Dsu::new(self.faces.len());
        for fs in occ.values() {
            if fs.len() == 2 {
                fd.union(fs[0], fs[1]);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..self.faces.len() {
            groups.entry(fd.find(k)).or_default().push(k);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Converts a closed complex to a foam.
    pub fn to_foam(&self) -> R<Foam> {
        convert(self)
    }
}

/// New cells and faces produced by a move.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveOut {
    pub edges: Vec<usize>,
    pub verts: Vec<usize>,
    pub faces: Vec<usize>,
}

/// A movie in progress: the current web and the complex swept so far.
#[derive(Debug, Clone)]
pub struct Movie {
    pub web: Web,
    pub cx: CellFoam,
}

impl Movie {
    /// Starts a movie at `web`; its cells become the bottom boundary,
    /// named `e<id>` and `v<id>`.
    pub fn new(n: usize, web: Web) -> R<Movie> {
        web.check(n)?;
        let mut cx = CellFoam::empty(n);
        let mut web = web;
        for v in web.live_verts() {
            let c = cx.new_vert();
            web.verts[v].as_mut().unwrap().cell = c;
            cx.bottom.insert(format!("v{v}"), Cell::Vert(c));
        }
        for e in web.live_edges() {
            let we = web.edges[e].as_ref().unwrap();
            let ends = match (we.tail, we.head) {
                (Some(t), Some(h)) => Some((web.verts[t].as_ref().unwrap().cell, web.verts[h].as_ref().unwrap().cell)),
                _ => None,
            };
            let c = cx.new_edge(ends);
            web.edges[e].as_mut().unwrap().cell = c;
            cx.bottom.insert(format!("e{e}"), Cell::Edge(c));
        }
        Ok(Movie { web, cx })
    }

    pub fn empty(n: usize) -> Movie {
        Movie { web: Web::new(), cx: CellFoam::empty(n) }
    }

    pub fn n(&self) -> usize {
        self.cx.n
    }

    fn cell_e(&self, e: usize) -> usize {
        self.web.edges[e].as_ref().unwrap().cell
    }

    fn cell_v(&self, v: usize) -> usize {
        self.web.verts[v].as_ref().unwrap().cell
    }

    fn push_edge(&mut self, label: usize, tail: Option<usize>, head: Option<usize>, cell: usize) -> usize {
        self.web.edges.push(Some(WEdge { label, tail, head, cell }));
        self.web.edges.len() - 1
    }

    fn push_vert(&mut self, merge: bool, cell: usize) -> usize {
        let h = Half { edge: usize::MAX, at_head: false };
        self.web.verts.push(Some(WVert { merge, rot: [h; 3], cell }));
        self.web.verts.len() - 1
    }

    fn set_rot_halves(&mut self, v: usize, rot: [(usize, bool); 3]) {
        self.web.verts[v].as_mut().unwrap().rot = rot.map(|(edge, at_head)| Half { edge, at_head });
    }

    /// Thick, then the two thin half-edges of `v` (clockwise order).
    fn rot_edges(&self, v: usize) -> [usize; 3] {
        self.web.verts[v].as_ref().unwrap().rot.map(|h| h.edge)
    }

    fn retarget(&mut self, old: usize, new: usize) -> R<()> {
        // Moves the far ends of web edge `old` onto `new`.
        let we = self.web.edges[old].clone().unwrap();
        if let Some(t) = we.tail {
            if self.web.verts[t].is_some() {
                self.web.replace_half(t, Half { edge: old, at_head: false }, Half { edge: new, at_head: false })?;
            }
        }
        if let Some(h) = we.head {
            if self.web.verts[h].is_some() {
                self.web.replace_half(h, Half { edge: old, at_head: true }, Half { edge: new, at_head: true })?;
            }
        }
        Ok(())
    }

    /// Birth of a circle with the given label; the swept facet is a cup.
    pub fn birth(&mut self, label: usize) -> MoveOut {
        let c = self.cx.new_edge(None);
        let face = self.cx.new_face(label, vec![vec![(c, false)]]);
        let e = self.push_edge(label, None, None, c);
        MoveOut { edges: vec![e], verts: vec![], faces: vec![face] }
    }

    /// Death of a circle; the swept facet is a cap.
    pub fn death(&mut self, e: usize) -> R<MoveOut> {
        let we = self.web.edge(e)?.clone();
        if we.tail.is_some() {
            return Err(MovieError::Move(format!("edge {e} is not a circle")));
        }
        let face = self.cx.new_face(we.label, vec![vec![(we.cell, true)]]);
        self.web.edges[e] = None;
        Ok(MoveOut { edges: vec![], verts: vec![], faces: vec![face] })
    }

    /// Zips two parallel edges with the same direction, `left` on the left.
    /// Returns edges `[thick, left-in, right-in, left-out, right-out]`
    /// (a circle contributes one edge for both in and out), vertices
    /// `[merge, split]` and faces `[left strip, right strip, bigon]`.
    pub fn zip(&mut self, left: usize, right: usize) -> R<MoveOut> {
        if left == right {
            return Err(MovieError::Move("zip needs two edges".into()));
        }
        let (wl, wr) = (self.web.edge(left)?.clone(), self.web.edge(right)?.clone());
        let (a, b) = (wl.label, wr.label);
        if a + b > self.n() {
            return Err(MovieError::Move("zip exceeds N".into()));
        }
        let vc = self.cx.new_vert();
        let xc = self.cx.new_vert();
        let beta = self.cx.new_edge(Some((vc, xc)));
        let fcell = self.cx.new_edge(Some((vc, xc)));
        let v = self.push_vert(true, vc);
        let x = self.push_vert(false, xc);
        let f = self.push_edge(a + b, Some(v), Some(x), fcell);
        let strip = |m: &mut Movie, e: usize, we: &WEdge| -> R<(usize, usize, usize)> {
            // Returns (in edge, out edge, face).
            match (we.tail, we.head) {
                (Some(t), Some(h)) => {
                    let tc = m.cell_v(t);
                    let hc = m.cell_v(h);
                    let ina = m.cx.new_edge(Some((tc, vc)));
                    let outb = m.cx.new_edge(Some((xc, hc)));
                    let e_in = m.push_edge(we.label, Some(t), Some(v), ina);
                    let e_out = m.push_edge(we.label, Some(x), Some(h), outb);
                    m.web.replace_half(t, Half { edge: e, at_head: false }, Half { edge: e_in, at_head: false })?;
                    m.web.replace_half(h, Half { edge: e, at_head: true }, Half { edge: e_out, at_head: true })?;
                    let face =
                        m.cx.new_face(we.label, vec![vec![(we.cell, true), (outb, false), (beta, false), (ina, false)]]);
                    Ok((e_in, e_out, face))
                }
                _ => {
                    let ec = m.cx.new_edge(Some((xc, vc)));
                    let ne = m.push_edge(we.label, Some(x), Some(v), ec);
                    let face = m.cx.new_face(we.label, vec![vec![(we.cell, true)], vec![(beta, false), (ec, false)]]);
                    Ok((ne, ne, face))
                }
            }
        };
        let (l_in, l_out, lf) = strip(self, left, &wl)?;
        let (r_in, r_out, rf) = strip(self, right, &wr)?;
        let bigon = self.cx.new_face(a + b, vec![vec![(fcell, false), (beta, true)]]);
        self.web.edges[left] = None;
        self.web.edges[right] = None;
        self.set_rot_halves(v, [(f, false), (r_in, true), (l_in, true)]);
        self.set_rot_halves(x, [(f, true), (l_out, false), (r_out, false)]);
        self.cx.orders.insert(beta, [bigon, rf, lf]);
        Ok(MoveOut { edges: vec![f, l_in, r_in, l_out, r_out], verts: vec![v, x], faces: vec![lf, rf, bigon] })
    }

    /// Unzips the thick edge `f` running from a merge to a split vertex.
    /// Returns edges `[left, right]` and faces `[left strip, right strip, bigon]`.
    pub fn unzip(&mut self, f: usize) -> R<MoveOut> {
        let wf = self.web.edge(f)?.clone();
        let (Some(v), Some(x)) = (wf.tail, wf.head) else {
            return Err(MovieError::Move(format!("edge {f} is a circle")));
        };
        let (vv, vx) = (self.web.vert(v)?.clone(), self.web.vert(x)?.clone());
        if !vv.merge || vx.merge {
            return Err(MovieError::Move("unzip needs a merge followed by a split".into()));
        }
        let [_, g2, g1] = self.rot_edges(v);
        let [_, h1, h2] = self.rot_edges(x);
        if self.web.label(g1) != self.web.label(h1) || self.web.label(g2) != self.web.label(h2) {
            return Err(MovieError::Move("unzip labels do not match".into()));
        }
        if (g1 == h2 && g1 != h1) || (g2 == h1 && g2 != h2) {
            return Err(MovieError::Move("unzip would join crossing strands".into()));
        }
        let (vc, xc) = (vv.cell, vx.cell);
        let beta = self.cx.new_edge(Some((vc, xc)));
        let strand = |m: &mut Movie, g: usize, h: usize| -> R<(usize, usize)> {
            let label = m.web.label(g);
            if g == h {
                let gc = m.cell_e(g);
                let nc = m.cx.new_edge(None);
                let ne = m.push_edge(label, None, None, nc);
                let face = m.cx.new_face(label, vec![vec![(gc, true), (beta, true)], vec![(nc, false)]]);
                m.web.edges[g] = None;
                return Ok((ne, face));
            }
            let t = m.web.edge(g)?.tail.unwrap();
            let hh = m.web.edge(h)?.head.unwrap();
            let (tc, hc) = (m.cell_v(t), m.cell_v(hh));
            let nc = m.cx.new_edge(Some((tc, hc)));
            let ne = m.push_edge(label, Some(t), Some(hh), nc);
            m.retarget(g, ne)?;
            m.retarget(h, ne)?;
            let face = m.cx.new_face(label, vec![vec![(m.cell_e(g), true), (beta, true), (m.cell_e(h), true), (nc, false)]]);
            m.web.edges[g] = None;
            m.web.edges[h] = None;
            Ok((ne, face))
        };
        let fcell = self.cell_e(f);
        let (l, lf) = strand(self, g1, h1)?;
        let (r, rf) = strand(self, g2, h2)?;
        let bigon = self.cx.new_face(wf.label, vec![vec![(fcell, true), (beta, false)]]);
        self.cx.orders.insert(beta, [bigon, rf, lf]);
        self.web.edges[f] = None;
        self.web.verts[v] = None;
        self.web.verts[x] = None;
        Ok(MoveOut { edges: vec![l, r], verts: vec![], faces: vec![lf, rf, bigon] })
    }

    /// Splits edge `e` into a digon with thin edges labeled `a` (left) and
    /// the remainder (right). Returns edges `[left, right, in, out]`
    /// (a circle gives one edge for in and out), vertices `[split, merge]`,
    /// faces `[left half-disk, right half-disk, thick strip]`.
    pub fn digon_birth(&mut self, e: usize, a: usize) -> R<MoveOut> {
        let we = self.web.edge(e)?.clone();
        if a == 0 || a >= we.label {
            return Err(MovieError::Move("digon labels must be positive".into()));
        }
        let b = we.label - a;
        let wc = self.cx.new_vert();
        let vc = self.cx.new_vert();
        let beta = self.cx.new_edge(Some((wc, vc)));
        let pc = self.cx.new_edge(Some((wc, vc)));
        let qc = self.cx.new_edge(Some((wc, vc)));
        let w = self.push_vert(false, wc);
        let v = self.push_vert(true, vc);
        let p = self.push_edge(a, Some(w), Some(v), pc);
        let q = self.push_edge(b, Some(w), Some(v), qc);
        let (e_in, e_out, strip) = match (we.tail, we.head) {
            (Some(t), Some(h)) => {
                let (tc, hc) = (self.cell_v(t), self.cell_v(h));
                let c1 = self.cx.new_edge(Some((tc, wc)));
                let c2 = self.cx.new_edge(Some((vc, hc)));
                let e1 = self.push_edge(we.label, Some(t), Some(w), c1);
                let e2 = self.push_edge(we.label, Some(v), Some(h), c2);
                self.web.replace_half(t, Half { edge: e, at_head: false }, Half { edge: e1, at_head: false })?;
                self.web.replace_half(h, Half { edge: e, at_head: true }, Half { edge: e2, at_head: true })?;
                let face = self.cx.new_face(we.label, vec![vec![(we.cell, true), (c2, false), (beta, false), (c1, false)]]);
                (e1, e2, face)
            }
            _ => {
                let c = self.cx.new_edge(Some((vc, wc)));
                let ne = self.push_edge(we.label, Some(v), Some(w), c);
                let face = self.cx.new_face(we.label, vec![vec![(we.cell, true)], vec![(beta, false), (c, false)]]);
                (ne, ne, face)
            }
        };
        let pf = self.cx.new_face(a, vec![vec![(pc, false), (beta, true)]]);
        let qf = self.cx.new_face(b, vec![vec![(qc, false), (beta, true)]]);
        self.web.edges[e] = None;
        self.set_rot_halves(w, [(e_in, true), (p, false), (q, false)]);
        self.set_rot_halves(v, [(e_out, false), (q, true), (p, true)]);
        self.cx.orders.insert(beta, [strip, qf, pf]);
        Ok(MoveOut { edges: vec![p, q, e_in, e_out], verts: vec![w, v], faces: vec![pf, qf, strip] })
    }

    /// Collapses the digon whose left edge is `p` (running from a split to a merge).
    /// Returns edges `[thick]` and faces `[left half-disk, right half-disk, thick strip]`.
    pub fn digon_death(&mut self, p: usize) -> R<MoveOut> {
        let wp = self.web.edge(p)?.clone();
        let (Some(w), Some(v)) = (wp.tail, wp.head) else {
            return Err(MovieError::Move(format!("edge {p} is a circle")));
        };
        let (ww, wv) = (self.web.vert(w)?.clone(), self.web.vert(v)?.clone());
        if ww.merge || !wv.merge {
            return Err(MovieError::Move("digon must run from a split to a merge".into()));
        }
        let [e1, pl, q] = self.rot_edges(w);
        let [e2, q2, p2] = self.rot_edges(v);
        if pl != p || p2 != p || q2 != q {
            return Err(MovieError::Move(format!("edge {p} is not the left edge of a digon")));
        }
        let label = self.web.label(e1);
        let (wc, vc) = (ww.cell, wv.cell);
        let beta = self.cx.new_edge(Some((vc, wc)));
        let pf = self.cx.new_face(wp.label, vec![vec![(wp.cell, true), (beta, true)]]);
        let qf = self.cx.new_face(self.web.label(q), vec![vec![(self.cell_e(q), true), (beta, true)]]);
        let (ne, strip) = if e1 == e2 {
            let nc = self.cx.new_edge(None);
            let ne = self.push_edge(label, None, None, nc);
            let face = self.cx.new_face(label, vec![vec![(self.cell_e(e1), true), (beta, false)], vec![(nc, false)]]);
            self.web.edges[e1] = None;
            (ne, face)
        } else {
            let t = self.web.edge(e1)?.tail.unwrap();
            let h = self.web.edge(e2)?.head.unwrap();
            let (tc, hc) = (self.cell_v(t), self.cell_v(h));
            let nc = self.cx.new_edge(Some((tc, hc)));
            let ne = self.push_edge(label, Some(t), Some(h), nc);
            self.retarget(e1, ne)?;
            self.retarget(e2, ne)?;
            let face = self.cx.new_face(
                label,
                vec![vec![(self.cell_e(e1), true), (beta, false), (self.cell_e(e2), true), (nc, false)]],
            );
            self.web.edges[e1] = None;
            self.web.edges[e2] = None;
            (ne, face)
        };
        self.cx.orders.insert(beta, [strip, qf, pf]);
        self.web.edges[p] = None;
        self.web.edges[q] = None;
        self.web.verts[w] = None;
        self.web.verts[v] = None;
        Ok(MoveOut { edges: vec![ne], verts: vec![], faces: vec![pf, qf, strip] })
    }

    fn distinct_outer(&self, es: &[usize]) -> R<()> {
        let set: BTreeSet<usize> = es.iter().copied().collect();
        if set.len() != es.len() {
            return Err(MovieError::Move("associativity move on a web with repeated outer edges".into()));
        }
        for &e in es {
            if self.web.edge(e)?.tail.is_none() {
                return Err(MovieError::Move("outer edge is a circle".into()));
            }
        }
        Ok(())
    }

    /// `(ab)c -> a(bc)` on merges: `u1` merges a, b and its output is the
    /// left input of the merge `u2`. Returns edges `[a, b, c, bc, abc]`,
    /// vertices `[bc merge, abc merge]`, faces `[a, b, c, abc, ab, bc]`.
    pub fn assoc_merge(&mut self, u1: usize) -> R<MoveOut> {
        let vu1 = self.web.vert(u1)?.clone();
        if !vu1.merge {
            return Err(MovieError::Move("assoc_merge needs a merge".into()));
        }
        let [g, b, a] = self.rot_edges(u1);
        let u2 = self.web.edge(g)?.head.unwrap();
        let vu2 = self.web.vert(u2)?.clone();
        let [h, c, g2] = self.rot_edges(u2);
        if !vu2.merge || g2 != g {
            return Err(MovieError::Move("output of u1 is not the left input of a merge".into()));
        }
        self.distinct_outer(&[a, b, c, h])?;
        let (la, lb, lc) = (self.web.label(a), self.web.label(b), self.web.label(c));
        let (u1c, u2c) = (vu1.cell, vu2.cell);
        let sc = self.cx.new_vert();
        let x1c = self.cx.new_vert();
        let x2c = self.cx.new_vert();
        let b1 = self.cx.new_edge(Some((u1c, sc)));
        let b2 = self.cx.new_edge(Some((u2c, sc)));
        let b3 = self.cx.new_edge(Some((sc, x1c)));
        let b4 = self.cx.new_edge(Some((sc, x2c)));
        let (ta, tb, tc, hh) = (
            self.web.edge(a)?.tail.unwrap(),
            self.web.edge(b)?.tail.unwrap(),
            self.web.edge(c)?.tail.unwrap(),
            self.web.edge(h)?.head.unwrap(),
        );
        let x1 = self.push_vert(true, x1c);
        let x2 = self.push_vert(true, x2c);
        let a_c = self.cx.new_edge(Some((self.cell_v(ta), x2c)));
        let b_c = self.cx.new_edge(Some((self.cell_v(tb), x1c)));
        let c_c = self.cx.new_edge(Some((self.cell_v(tc), x1c)));
        let g_c = self.cx.new_edge(Some((x1c, x2c)));
        let h_c = self.cx.new_edge(Some((x2c, self.cell_v(hh))));
        let na = self.push_edge(la, Some(ta), Some(x2), a_c);
        let nb = self.push_edge(lb, Some(tb), Some(x1), b_c);
        let nc = self.push_edge(lc, Some(tc), Some(x1), c_c);
        let ng = self.push_edge(lb + lc, Some(x1), Some(x2), g_c);
        let nh = self.push_edge(la + lb + lc, Some(x2), Some(hh), h_c);
        let (ca, cb, cc, cg, ch) = (self.cell_e(a), self.cell_e(b), self.cell_e(c), self.cell_e(g), self.cell_e(h));
        let fa = self.cx.new_face(la, vec![vec![(ca, true), (b1, true), (b4, true), (a_c, false)]]);
        let fb = self.cx.new_face(lb, vec![vec![(cb, true), (b1, true), (b3, true), (b_c, false)]]);
        let fc = self.cx.new_face(lc, vec![vec![(cc, true), (b2, true), (b3, true), (c_c, false)]]);
        let fh = self.cx.new_face(la + lb + lc, vec![vec![(ch, true), (h_c, false), (b4, false), (b2, false)]]);
        let fg = self.cx.new_face(la + lb, vec![vec![(cg, true), (b2, true), (b1, false)]]);
        let fg2 = self.cx.new_face(lb + lc, vec![vec![(g_c, false), (b3, false), (b4, true)]]);
        self.cx.orders.insert(b1, [fg, fb, fa]);
        self.cx.orders.insert(b2, [fh, fc, fg]);
        self.cx.orders.insert(b3, [fg2, fc, fb]);
        self.cx.orders.insert(b4, [fh, fg2, fa]);
        self.retarget(a, na)?;
        self.retarget(b, nb)?;
        self.retarget(c, nc)?;
        self.retarget(h, nh)?;
        self.set_rot_halves(x1, [(ng, false), (nc, true), (nb, true)]);
        self.set_rot_halves(x2, [(nh, false), (ng, true), (na, true)]);
        for e in [a, b, c, g, h] {
            self.web.edges[e] = None;
        }
        self.web.verts[u1] = None;
        self.web.verts[u2] = None;
        Ok(MoveOut { edges: vec![na, nb, nc, ng, nh], verts: vec![x1, x2], faces: vec![fa, fb, fc, fh, fg, fg2] })
    }

    /// `a(bc) -> (ab)c` on merges: `x1` merges b, c and its output is the
    /// right input of the merge `x2`. Returns edges `[a, b, c, ab, abc]`,
    /// vertices `[ab merge, abc merge]`, faces `[a, b, c, abc, bc, ab]`.
    pub fn assoc_merge_inv(&mut self, x1: usize) -> R<MoveOut> {
        let vx1 = self.web.vert(x1)?.clone();
        if !vx1.merge {
            return Err(MovieError::Move("assoc_merge_inv needs a merge".into()));
        }
        let [gp, c, b] = self.rot_edges(x1);
        let x2 = self.web.edge(gp)?.head.unwrap();
        let vx2 = self.web.vert(x2)?.clone();
        let [hp, g2, a] = self.rot_edges(x2);
        if !vx2.merge || g2 != gp {
            return Err(MovieError::Move("output of x1 is not the right input of a merge".into()));
        }
        self.distinct_outer(&[a, b, c, hp])?;
        let (la, lb, lc) = (self.web.label(a), self.web.label(b), self.web.label(c));
        let (x1c, x2c) = (vx1.cell, vx2.cell);
        let sc = self.cx.new_vert();
        let u1c = self.cx.new_vert();
        let u2c = self.cx.new_vert();
        let b3 = self.cx.new_edge(Some((x1c, sc)));
        let b4 = self.cx.new_edge(Some((x2c, sc)));
        let b1 = self.cx.new_edge(Some((sc, u1c)));
        let b2 = self.cx.new_edge(Some((sc, u2c)));
        let (ta, tb, tc, hh) = (
            self.web.edge(a)?.tail.unwrap(),
            self.web.edge(b)?.tail.unwrap(),
            self.web.edge(c)?.tail.unwrap(),
            self.web.edge(hp)?.head.unwrap(),
        );
        let u1 = self.push_vert(true, u1c);
        let u2 = self.push_vert(true, u2c);
        let a_c = self.cx.new_edge(Some((self.cell_v(ta), u1c)));
        let b_c = self.cx.new_edge(Some((self.cell_v(tb), u1c)));
        let c_c = self.cx.new_edge(Some((self.cell_v(tc), u2c)));
        let g_c = self.cx.new_edge(Some((u1c, u2c)));
        let h_c = self.cx.new_edge(Some((u2c, self.cell_v(hh))));
        let na = self.push_edge(la, Some(ta), Some(u1), a_c);
        let nb = self.push_edge(lb, Some(tb), Some(u1), b_c);
        let nc = self.push_edge(lc, Some(tc), Some(u2), c_c);
        let ng = self.push_edge(la + lb, Some(u1), Some(u2), g_c);
        let nh = self.push_edge(la + lb + lc, Some(u2), Some(hh), h_c);
        let (ca, cb, cc, cgp, chp) = (self.cell_e(a), self.cell_e(b), self.cell_e(c), self.cell_e(gp), self.cell_e(hp));
        let fa = self.cx.new_face(la, vec![vec![(ca, true), (b4, true), (b1, true), (a_c, false)]]);
        let fb = self.cx.new_face(lb, vec![vec![(cb, true), (b3, true), (b1, true), (b_c, false)]]);
        let fc = self.cx.new_face(lc, vec![vec![(cc, true), (b3, true), (b2, true), (c_c, false)]]);
        let fh = self.cx.new_face(la + lb + lc, vec![vec![(chp, true), (h_c, false), (b2, false), (b4, false)]]);
        let fgp = self.cx.new_face(lb + lc, vec![vec![(cgp, true), (b4, true), (b3, false)]]);
        let fg = self.cx.new_face(la + lb, vec![vec![(g_c, false), (b1, false), (b2, true)]]);
        self.cx.orders.insert(b3, [fgp, fc, fb]);
        self.cx.orders.insert(b4, [fh, fgp, fa]);
        self.cx.orders.insert(b1, [fg, fb, fa]);
        self.cx.orders.insert(b2, [fh, fc, fg]);
        self.retarget(a, na)?;
        self.retarget(b, nb)?;
        self.retarget(c, nc)?;
        self.retarget(hp, nh)?;
        self.set_rot_halves(u1, [(ng, false), (nb, true), (na, true)]);
        self.set_rot_halves(u2, [(nh, false), (nc, true), (ng, true)]);
        for e in [a, b, c, gp, hp] {
            self.web.edges[e] = None;
        }
        self.web.verts[x1] = None;
        self.web.verts[x2] = None;
        Ok(MoveOut { edges: vec![na, nb, nc, ng, nh], verts: vec![u1, u2], faces: vec![fa, fb, fc, fh, fgp, fg] })
    }

    /// `(ab)c -> a(bc)` on splits: `w2` splits into (ab, c) and `w1` splits
    /// its left output into (a, b). Returns edges `[a, b, c, bc, abc]`,
    /// vertices `[abc split, bc split]`, faces `[a, b, c, abc, ab, bc]`.
    pub fn assoc_split(&mut self, w2: usize) -> R<MoveOut> {
        let vw2 = self.web.vert(w2)?.clone();
        if vw2.merge {
            return Err(MovieError::Move("assoc_split needs a split".into()));
        }
        let [h, g, c] = self.rot_edges(w2);
        let w1 = self.web.edge(g)?.head.unwrap();
        let vw1 = self.web.vert(w1)?.clone();
        let [g2, a, b] = self.rot_edges(w1);
        if vw1.merge || g2 != g {
            return Err(MovieError::Move("left output of w2 is not split".into()));
        }
        self.distinct_outer(&[a, b, c, h])?;
        let (la, lb, lc) = (self.web.label(a), self.web.label(b), self.web.label(c));
        let (w1c, w2c) = (vw1.cell, vw2.cell);
        let sc = self.cx.new_vert();
        let y1c = self.cx.new_vert();
        let y2c = self.cx.new_vert();
        let bw1 = self.cx.new_edge(Some((sc, w1c)));
        let bw2 = self.cx.new_edge(Some((sc, w2c)));
        let by1 = self.cx.new_edge(Some((y1c, sc)));
        let by2 = self.cx.new_edge(Some((y2c, sc)));
        let (ha, hb, hc, th) = (
            self.web.edge(a)?.head.unwrap(),
            self.web.edge(b)?.head.unwrap(),
            self.web.edge(c)?.head.unwrap(),
            self.web.edge(h)?.tail.unwrap(),
        );
        let y2 = self.push_vert(false, y2c);
        let y1 = self.push_vert(false, y1c);
        let a_c = self.cx.new_edge(Some((y2c, self.cell_v(ha))));
        let b_c = self.cx.new_edge(Some((y1c, self.cell_v(hb))));
        let c_c = self.cx.new_edge(Some((y1c, self.cell_v(hc))));
        let g_c = self.cx.new_edge(Some((y2c, y1c)));
        let h_c = self.cx.new_edge(Some((self.cell_v(th), y2c)));
        let na = self.push_edge(la, Some(y2), Some(ha), a_c);
        let nb = self.push_edge(lb, Some(y1), Some(hb), b_c);
        let nc = self.push_edge(lc, Some(y1), Some(hc), c_c);
        let ng = self.push_edge(lb + lc, Some(y2), Some(y1), g_c);
        let nh = self.push_edge(la + lb + lc, Some(th), Some(y2), h_c);
        let (ca, cb, cc, cg, ch) = (self.cell_e(a), self.cell_e(b), self.cell_e(c), self.cell_e(g), self.cell_e(h));
        let fa = self.cx.new_face(la, vec![vec![(ca, true), (a_c, false), (by2, true), (bw1, true)]]);
        let fb = self.cx.new_face(lb, vec![vec![(cb, true), (b_c, false), (by1, true), (bw1, true)]]);
        let fc = self.cx.new_face(lc, vec![vec![(cc, true), (c_c, false), (by1, true), (bw2, true)]]);
        let fh = self.cx.new_face(la + lb + lc, vec![vec![(ch, true), (bw2, false), (by2, false), (h_c, false)]]);
        let fg = self.cx.new_face(la + lb, vec![vec![(cg, true), (bw1, false), (bw2, true)]]);
        let fg2 = self.cx.new_face(lb + lc, vec![vec![(g_c, false), (by2, true), (by1, false)]]);
        self.cx.orders.insert(bw1, [fb, fa, fg]);
        self.cx.orders.insert(bw2, [fc, fg, fh]);
        self.cx.orders.insert(by1, [fc, fb, fg2]);
        self.cx.orders.insert(by2, [fg2, fa, fh]);
        self.retarget(a, na)?;
        self.retarget(b, nb)?;
        self.retarget(c, nc)?;
        self.retarget(h, nh)?;
        self.set_rot_halves(y2, [(nh, true), (na, false), (ng, false)]);
        self.set_rot_halves(y1, [(ng, true), (nb, false), (nc, false)]);
        for e in [a, b, c, g, h] {
            self.web.edges[e] = None;
        }
        self.web.verts[w1] = None;
        self.web.verts[w2] = None;
        Ok(MoveOut { edges: vec![na, nb, nc, ng, nh], verts: vec![y2, y1], faces: vec![fa, fb, fc, fh, fg, fg2] })
    }

    /// `a(bc) -> (ab)c` on splits: `y2` splits into (a, bc) and `y1` splits
    /// its right output into (b, c). Returns edges `[a, b, c, ab, abc]`,
    /// vertices `[abc split, ab split]`, faces `[a, b, c, abc, bc, ab]`.
    pub fn assoc_split_inv(&mut self, y2: usize) -> R<MoveOut> {
        let vy2 = self.web.vert(y2)?.clone();
        if vy2.merge {
            return Err(MovieError::Move("assoc_split_inv needs a split".into()));
        }
        let [hp, a, gp] = self.rot_edges(y2);
        let y1 = self.web.edge(gp)?.head.unwrap();
        let vy1 = self.web.vert(y1)?.clone();
        let [g2, b, c] = self.rot_edges(y1);
        if vy1.merge || g2 != gp {
            return Err(MovieError::Move("right output of y2 is not split".into()));
        }
        self.distinct_outer(&[a, b, c, hp])?;
        let (la, lb, lc) = (self.web.label(a), self.web.label(b), self.web.label(c));
        let (y1c, y2c) = (vy1.cell, vy2.cell);
        let sc = self.cx.new_vert();
        let w1c = self.cx.new_vert();
        let w2c = self.cx.new_vert();
        let by1 = self.cx.new_edge(Some((sc, y1c)));
        let by2 = self.cx.new_edge(Some((sc, y2c)));
        let bw1 = self.cx.new_edge(Some((w1c, sc)));
        let bw2 = self.cx.new_edge(Some((w2c, sc)));
        let (ha, hb, hc, th) = (
            self.web.edge(a)?.head.unwrap(),
            self.web.edge(b)?.head.unwrap(),
            self.web.edge(c)?.head.unwrap(),
            self.web.edge(hp)?.tail.unwrap(),
        );
        let w2 = self.push_vert(false, w2c);
        let w1 = self.push_vert(false, w1c);
        let a_c = self.cx.new_edge(Some((w1c, self.cell_v(ha))));
        let b_c = self.cx.new_edge(Some((w1c, self.cell_v(hb))));
        let c_c = self.cx.new_edge(Some((w2c, self.cell_v(hc))));
        let g_c = self.cx.new_edge(Some((w2c, w1c)));
        let h_c = self.cx.new_edge(Some((self.cell_v(th), w2c)));
        let na = self.push_edge(la, Some(w1), Some(ha), a_c);
        let nb = self.push_edge(lb, Some(w1), Some(hb), b_c);
        let nc = self.push_edge(lc, Some(w2), Some(hc), c_c);
        let ng = self.push_edge(la + lb, Some(w2), Some(w1), g_c);
        let nh = self.push_edge(la + lb + lc, Some(th), Some(w2), h_c);
        let (ca, cb, cc, cgp, chp) = (self.cell_e(a), self.cell_e(b), self.cell_e(c), self.cell_e(gp), self.cell_e(hp));
        let fa = self.cx.new_face(la, vec![vec![(ca, true), (a_c, false), (bw1, true), (by2, true)]]);
        let fb = self.cx.new_face(lb, vec![vec![(cb, true), (b_c, false), (bw1, true), (by1, true)]]);
        let fc = self.cx.new_face(lc, vec![vec![(cc, true), (c_c, false), (bw2, true), (by1, true)]]);
        let fh = self.cx.new_face(la + lb + lc, vec![vec![(chp, true), (by2, false), (bw2, false), (h_c, false)]]);
        let fgp = self.cx.new_face(lb + lc, vec![vec![(cgp, true), (by1, false), (by2, true)]]);
        let fg = self.cx.new_face(la + lb, vec![vec![(g_c, false), (bw2, true), (bw1, false)]]);
        self.cx.orders.insert(by2, [fgp, fa, fh]);
        self.cx.orders.insert(by1, [fc, fb, fgp]);
        self.cx.orders.insert(bw1, [fb, fa, fg]);
        self.cx.orders.insert(bw2, [fc, fg, fh]);
        self.retarget(a, na)?;
        self.retarget(b, nb)?;
        self.retarget(c, nc)?;
        self.retarget(hp, nh)?;
        self.set_rot_halves(w2, [(nh, true), (ng, false), (nc, false)]);
        self.set_rot_halves(w1, [(ng, true), (na, false), (nb, false)]);
        for e in [a, b, c, gp, hp] {
            self.web.edges[e] = None;
        }
        self.web.verts[y1] = None;
        self.web.verts[y2] = None;
        Ok(MoveOut { edges: vec![na, nb, nc, ng, nh], verts: vec![w2, w1], faces: vec![fa, fb, fc, fh, fgp, fg] })
    }

    /// Sweeps the whole current web once more (a product layer). Returns the
    /// new face of every live web edge, keyed by edge id.
    pub fn identity_layer(&mut self) -> BTreeMap<usize, usize> {
        let mut up = BTreeMap::new();
        for v in self.web.live_verts() {
            let old = self.cell_v(v);
            let new = self.cx.new_vert();
            let b = self.cx.new_edge(Some((old, new)));
            up.insert(v, (new, b));
        }
        let mut faces = BTreeMap::new();
        for e in self.web.live_edges() {
            let we = self.web.edges[e].clone().unwrap();
            let face = match (we.tail, we.head) {
                (Some(t), Some(h)) => {
                    let (tn, tb) = up[&t];
                    let (hn, hb) = up[&h];
                    let nc = self.cx.new_edge(Some((tn, hn)));
                    self.web.edges[e].as_mut().unwrap().cell = nc;
                    self.cx.new_face(we.label, vec![vec![(we.cell, true), (hb, true), (nc, false), (tb, false)]])
                }
                _ => {
                    let nc = self.cx.new_edge(None);
                    self.web.edges[e].as_mut().unwrap().cell = nc;
                    self.cx.new_face(we.label, vec![vec![(we.cell, true)], vec![(nc, false)]])
                }
            };
            faces.insert(e, face);
        }
        for v in self.web.live_verts() {
            let (new, b) = up[&v];
            let wv = self.web.verts[v].as_mut().unwrap();
            wv.cell = new;
            let merge = wv.merge;
            let mut ord = wv.rot.map(|h| faces[&h.edge]);
            if !merge {
                ord.reverse();
            }
            self.cx.orders.insert(b, ord);
        }
        faces
    }

    pub fn decorate(&mut self, face: usize, c: SchurCombo) {
        self.cx.decorate(face, c);
    }

    /// Ends the movie with a product layer and names the top boundary
    /// `e<id>`/`v<id>`, with optional renaming of web ids.
    pub fn finish_named(mut self, edge_names: &BTreeMap<usize, String>, vert_names: &BTreeMap<usize, String>) -> R<CellFoam> {
        self.web.check(self.n())?;
        self.identity_layer();
        let mut top = BTreeMap::new();
        for v in self.web.live_verts() {
            let name = vert_names.get(&v).cloned().unwrap_or(format!("v{v}"));
            top.insert(name, Cell::Vert(self.cell_v(v)));
        }
        for e in self.web.live_edges() {
            let name = edge_names.get(&e).cloned().unwrap_or(format!("e{e}"));
            top.insert(name, Cell::Edge(self.cell_e(e)));
        }
        let expected = self.web.live_verts().len() + self.web.live_edges().len();
        if top.len() != expected {
            return Err(MovieError::Web("boundary names collide".into()));
        }
        self.cx.top = top;
        Ok(self.cx)
    }

    pub fn finish(self) -> R<CellFoam> {
        self.finish_named(&BTreeMap::new(), &BTreeMap::new())
    }
}

/// An occurrence of a cell edge in a face boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Occ {
    face: usize,
    cycle: usize,
    pos: usize,
}

fn convert(cx: &CellFoam) -> R<Foam> {
    if !cx.top.is_empty() || !cx.bottom.is_empty() {
        return Err(MovieError::Convert("complex still has boundary".into()));
    }
    let nv = cx.nverts;
    let ne = cx.edges.len();
    let mut vd = Dsu::new(nv);
    for &(a, b) in &cx.vert_glue {
        vd.union(a, b);
    }
    let mut ed = Dsu::new(ne);
    for &(a, b) in &cx.edge_glue {
        ed.union(a, b);
    }
    let ends = |e: usize, vd: &mut Dsu| -> Option<(usize, usize)> { cx.edges[e].map(|(a, b)| (vd.find(a), vd.find(b))) };
    for e in 0..ne {
        let r = ed.find(e);
        if ends(e, &mut vd) != ends(r, &mut vd) {
            return Err(MovieError::Convert(format!("glued edges {e} and {r} disagree")));
        }
    }
    // occurrences per canonical edge
    let mut occ: BTreeMap<usize, Vec<(Occ, bool)>> = BTreeMap::new();
    for (fi, f) in cx.faces.iter().enumerate() {
        for (ci, c) in f.cycles.iter().enumerate() {
            for (pi, &(e, fwd)) in c.iter().enumerate() {
                occ.entry(ed.find(e)).or_default().push((Occ { face: fi, cycle: ci, pos: pi }, fwd));
            }
        }
    }
    let mut binding: BTreeSet<usize> = BTreeSet::new();
    let mut fd = Dsu::new(cx.faces.len());
    for (&e, os) in &occ {
        match os.len() {
            2 => {
                let (o1, d1) = os[0];
                let (o2, d2) = os[1];
                if d1 == d2 {
                    return Err(MovieError::Convert(format!("edge {e}: orientations do not match")));
                }
                if cx.faces[o1.face].label != cx.faces[o2.face].label {
                    return Err(MovieError::Convert(format!("edge {e}: labels do not match")));
                }
                fd.union(o1.face, o2.face);
            }
            3 => {
                binding.insert(e);
            }
            k => return Err(MovieError::Convert(format!("edge {e} has valence {k}"))),
        }
    }
    // facets
    let mut facet_of_root = BTreeMap::new();
    let mut facet_of = vec![0usize; cx.faces.len()];
    for fi in 0..cx.faces.len() {
        let r = fd.find(fi);
        let next = facet_of_root.len();
        let id = *facet_of_root.entry(r).or_insert(next);
        facet_of[fi] = id;
    }
    let nfacets = facet_of_root.len();
    // binding edges: thin/thick roles and intrinsic direction
    struct Bind {
        fwd: bool,
        thick: usize,
    }
    let mut binfo: BTreeMap<usize, Bind> = BTreeMap::new();
    for &e in &binding {
        let os = &occ[&e];
        let dirs: Vec<bool> = os.iter().map(|x| x.1).collect();
        let odd = (0..3).find(|&k| dirs[k] != dirs[(k + 1) % 3] && dirs[k] != dirs[(k + 2) % 3]);
        let Some(thick) = odd else {
            return Err(MovieError::Convert(format!("binding edge {e}: all sides agree in orientation")));
        };
        let thin: Vec<usize> = (0..3).filter(|&k| k != thick).collect();
        let lab = |k: usize| cx.faces[os[k].0.face].label;
        if lab(thick) != lab(thin[0]) + lab(thin[1]) {
            return Err(MovieError::Convert(format!("binding edge {e}: label flow fails")));
        }
        binfo.insert(e, Bind { fwd: dirs[thin[0]], thick });
    }
    // binding degree at vertices
    let mut bdeg: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new(); // vertex -> (edge, end)
    for &e in &binding {
        if let Some((a, b)) = ends(e, &mut vd) {
            bdeg.entry(a).or_default().push((e, 0));
            bdeg.entry(b).or_default().push((e, 1));
        }
    }
    for (&v, l) in &bdeg {
        if l.len() != 2 && l.len() != 4 {
            return Err(MovieError::Convert(format!("vertex {v} has binding degree {}", l.len())));
        }
    }
    let singular: Vec<usize> = bdeg.iter().filter(|(_, l)| l.len() == 4).map(|(&v, _)| v).collect();
    let point_id: BTreeMap<usize, usize> = singular.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    // chains
    let mut arc_of_edge: BTreeMap<usize, usize> = BTreeMap::new();
    let mut chains: Vec<(Vec<usize>, Option<(usize, usize)>)> = Vec::new(); // edges in intrinsic order, endpoints
    let walk = |start_v: usize, first: (usize, usize), vd: &mut Dsu| -> (Vec<(usize, bool)>, usize) {
        // returns edges with "traversed from end 0 to 1" flags, and final vertex
        let mut out = Vec::new();
        let (mut e, mut end) = first;
        let mut v = start_v;
        loop {
            let (a, b) = ends(e, vd).unwrap();
            let forward = end == 0;
            out.push((e, forward));
            let next_v = if forward { b } else { a };
            let _ = v;
            v = next_v;
            let l = &bdeg[&v];
            if l.len() == 4 {
                return (out, v);
            }
            let other = l.iter().find(|&&(e2, end2)| !(e2 == e && end2 == if forward { 1 } else { 0 })).copied().unwrap();
            if other.0 == out[0].0 && v == start_v {
                return (out, v);
            }
            e = other.0;
            end = other.1;
        }
    };
    for &p in &singular {
        for &(e, end) in &bdeg[&p].clone() {
            if arc_of_edge.contains_key(&e) {
                continue;
            }
            let (list, last) = walk(p, (e, end), &mut vd);
            let intrinsic: Vec<bool> = list.iter().map(|&(e, fw)| binfo[&e].fwd == fw).collect();
            if intrinsic.iter().any(|&x| x != intrinsic[0]) {
                return Err(MovieError::Convert("binding orientation flips along an arc".into()));
            }
            let id = chains.len();
            let mut edges: Vec<usize> = list.iter().map(|x| x.0).collect();
            let endpoints = if intrinsic[0] { (p, last) } else { (last, p) };
            if !intrinsic[0] {
                edges.reverse();
            }
            for &x in &edges {
                arc_of_edge.insert(x, id);
            }
            chains.push((edges, Some(endpoints)));
        }
    }
    for &e in &binding {
        if arc_of_edge.contains_key(&e) {
            continue;
        }
        let id = chains.len();
        match ends(e, &mut vd) {
            None => {
                arc_of_edge.insert(e, id);
                chains.push((vec![e], None));
            }
            Some((a, _)) => {
                let (list, _) = walk(a, (e, 0), &mut vd);
                for &(x, _) in &list {
                    arc_of_edge.insert(x, id);
                }
                chains.push((list.into_iter().map(|x| x.0).collect(), None));
            }
        }
    }
    // sides and slots
    let mut occ_slot: BTreeMap<Occ, (usize, usize)> = BTreeMap::new();
    let mut arcs = Vec::new();
    for (id, (edges, endpoints)) in chains.iter().enumerate() {
        let mut sides: Option<[usize; 3]> = None;
        for &e in edges {
            let os = &occ[&e];
            let info = &binfo[&e];
            let Some(ord) = cx.orders.get(&e) else {
                return Err(MovieError::Convert(format!("binding edge {e} has no cyclic order")));
            };
            let thick_face = os[info.thick].0.face;
            let k = ord
                .iter()
                .position(|&f| f == thick_face)
                .ok_or(MovieError::Convert(format!("binding edge {e}: stored order misses its faces")))?;
            let faces = [ord[(k + 1) % 3], ord[(k + 2) % 3], ord[k]];
            for &f in &faces {
                if !os.iter().any(|o| o.0.face == f) {
                    return Err(MovieError::Convert(format!("binding edge {e}: stored order misses its faces")));
                }
            }
            let fs = faces.map(|f| facet_of[f]);
            match sides {
                None => sides = Some(fs),
                Some(s) => {
                    if s != fs {
                        return Err(MovieError::Convert(format!("arc {id}: cyclic orders disagree along the arc")));
                    }
                }
            }
            let mut used = [false; 3];
            for (slot, &f) in faces.iter().enumerate() {
                let o = os.iter().enumerate().find(|(k, o)| o.0.face == f && !used[*k] && (slot == 2) == (*k == info.thick));
                let (k, o) = o.ok_or(MovieError::Convert(format!("binding edge {e}: ambiguous sides")))?;
                used[k] = true;
                occ_slot.insert(o.0, (id, slot));
            }
        }
        let kind = if endpoints.is_some() { ArcKind::Interval } else { ArcKind::Circle };
        arcs.push(BindingArc {
            id,
            kind,
            sides: sides.unwrap(),
            endpoints: endpoints.map(|(a, b)| [point_id[&a], point_id[&b]]),
        });
    }
    // points
    let mut points = Vec::new();
    for (k, &v) in singular.iter().enumerate() {
        let mut inc = Vec::new();
        for a in &arcs {
            if let Some([s, t]) = a.endpoints {
                if s == k {
                    inc.push((a.id, 0));
                }
                if t == k {
                    inc.push((a.id, 1));
                }
            }
        }
        if inc.len() != 4 {
            return Err(MovieError::Convert(format!("vertex {v}: {} arc ends", inc.len())));
        }
        points.push(SingularPoint { id: k, incident: [inc[0], inc[1], inc[2], inc[3]] });
    }
    // boundary tracing
    let twin = |o: Occ| -> Occ {
        let (e, _) = cx.faces[o.face].cycles[o.cycle][o.pos];
        let os = &occ[&ed.clone().find(e)];
        os.iter().map(|x| x.0).find(|&x| x != o).unwrap()
    };
    let succ = |o: Occ| -> Occ {
        let len = cx.faces[o.face].cycles[o.cycle].len();
        Occ { pos: (o.pos + 1) % len, ..o }
    };
    let is_binding = |o: Occ, ed: &mut Dsu| -> bool {
        let (e, _) = cx.faces[o.face].cycles[o.cycle][o.pos];
        binding.contains(&ed.find(e))
    };
    let mut ed2 = ed.clone();
    let mut visited: BTreeSet<Occ> = BTreeSet::new();
    let mut boundary: Vec<Vec<Vec<(usize, usize)>>> = vec![Vec::new(); nfacets];
    let starts: Vec<Occ> = occ_slot.keys().copied().collect();
    // Prefer starting each walk at the first edge of its arc so arcs are not split.
    let mut ordered_starts: Vec<Occ> = Vec::new();
    for &o in &starts {
        let (e, _) = cx.faces[o.face].cycles[o.cycle][o.pos];
        let ce = ed2.find(e);
        let (edges, _) = &chains[arc_of_edge[&ce]];
        if edges[0] == ce || edges.last() == Some(&ce) {
            ordered_starts.insert(0, o);
        } else {
            ordered_starts.push(o);
        }
    }
    for o0 in ordered_starts {
        if visited.contains(&o0) {
            continue;
        }
        let mut seq = Vec::new();
        let mut o = o0;
        let mut guard = 0;
        loop {
            visited.insert(o);
            seq.push(occ_slot[&o]);
            let mut m = succ(o);
            while !is_binding(m, &mut ed2) {
                m = succ(twin(m));
                guard += 1;
                if guard > 1_000_000 {
                    return Err(MovieError::Convert("boundary walk does not close".into()));
                }
            }
            o = m;
            if o == o0 {
                break;
            }
            if visited.contains(&o) {
                return Err(MovieError::Convert("boundary walk revisits an occurrence".into()));
            }
        }
        // compress runs of the same arc-side, cyclically
        let mut comp: Vec<(usize, usize)> = Vec::new();
        for s in seq {
            if comp.last() != Some(&s) {
                comp.push(s);
            }
        }
        while comp.len() > 1 && comp.first() == comp.last() {
            comp.pop();
        }
        let facet = facet_of[o0.face];
        boundary[facet].push(comp);
    }
    // Euler characteristics and genus
    let mut chi = vec![0i64; nfacets];
    for (fi, f) in cx.faces.iter().enumerate() {
        chi[facet_of[fi]] += 2 - 2 * f.genus as i64 - f.cycles.len() as i64;
    }
    let mut vert_facets: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (&e, os) in &occ {
        if os.len() == 2 {
            if let Some((a, b)) = ends(e, &mut vd) {
                chi[facet_of[os[0].0.face]] -= 1;
                vert_facets.entry(a).or_default().insert(facet_of[os[0].0.face]);
                vert_facets.entry(b).or_default().insert(facet_of[os[0].0.face]);
            }
        }
    }
    for (v, fs) in &vert_facets {
        if !bdeg.contains_key(v) {
            if fs.len() != 1 {
                return Err(MovieError::Convert(format!("vertex {v} joins several facets")));
            }
            chi[*fs.iter().next().unwrap()] += 1;
        }
    }
    let mut facets = Vec::new();
    for k in 0..nfacets {
        let faces: Vec<usize> = (0..cx.faces.len()).filter(|&f| facet_of[f] == k).collect();
        let label = cx.faces[faces[0]].label;
        let mut dec = Decoration::one();
        for &f in &faces {
            dec = dec.times(&cx.faces[f].decoration);
        }
        let b = boundary[k].len() as i64;
        let g2 = 2 - b - chi[k];
        if g2 < 0 || g2 % 2 != 0 {
            return Err(MovieError::Convert(format!("facet {k}: χ = {}, {b} boundary circles", chi[k])));
        }
        facets.push(Facet { id: k, label, genus: (g2 / 2) as usize, boundary: boundary[k].clone(), decoration: dec });
    }
    Ok(Foam { n: cx.n, facets, arcs, points })
}
