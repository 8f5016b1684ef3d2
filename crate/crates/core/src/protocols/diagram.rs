use alloc::borrow::ToOwned;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

pub const SOURCE: &str = "SOURCE";
pub const SINK: &str = "SINK";

/// Edge labels: qubit, antiqubit, classical bit, ebit, antiebit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Species {
    Q,
    QBar,
    C,
    E,
    EBar,
}

impl Species {
    pub const ALL: [Species; 5] = [
        Species::Q,
        Species::QBar,
        Species::C,
        Species::E,
        Species::EBar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Species::Q => "q",
            Species::QBar => "qbar",
            Species::C => "c",
            Species::E => "e",
            Species::EBar => "ebar",
        }
    }

    /// The time-reversed species; classical bits map to themselves.
    pub fn conjugate(self) -> Species {
        match self {
            Species::Q => Species::QBar,
            Species::QBar => Species::Q,
            Species::C => Species::C,
            Species::E => Species::EBar,
            Species::EBar => Species::E,
        }
    }

    pub fn is_classical(self) -> bool {
        self == Species::C
    }

    fn is_barred(self) -> bool {
        matches!(self, Species::QBar | Species::EBar)
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Species {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Species::ALL
            .into_iter()
            .find(|sp| sp.as_str() == s)
            .ok_or_else(|| Error::InvalidDiagram(alloc::format!("unknown species {s:?}")))
    }
}

/// Entropy carried by one unit of each species, in bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpeciesWeights {
    pub q: f64,
    pub qbar: f64,
    pub c: f64,
    pub e: f64,
    pub ebar: f64,
}

impl Default for SpeciesWeights {
    fn default() -> Self {
        Self {
            q: 1.0,
            qbar: -1.0,
            c: 1.0,
            e: 1.0,
            ebar: -1.0,
        }
    }
}

impl SpeciesWeights {
    pub fn weight(&self, s: Species) -> f64 {
        match s {
            Species::Q => self.q,
            Species::QBar => self.qbar,
            Species::C => self.c,
            Species::E => self.e,
            Species::EBar => self.ebar,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    /// Measurement.
    M,
    /// Unitary transform.
    U,
}

impl VertexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::M => "M",
            VertexKind::U => "U",
        }
    }
}

impl FromStr for VertexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" => Ok(VertexKind::M),
            "U" => Ok(VertexKind::U),
            _ => Err(Error::InvalidDiagram(alloc::format!(
                "unknown vertex kind {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub id: String,
    pub kind: VertexKind,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Source,
    Sink,
    Vertex(String),
}

impl Endpoint {
    /// `"SOURCE"` and `"SINK"` are reserved; anything else names a vertex.
    pub fn parse(s: &str) -> Self {
        match s {
            SOURCE => Endpoint::Source,
            SINK => Endpoint::Sink,
            id => Endpoint::Vertex(id.to_owned()),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            Endpoint::Source => SOURCE,
            Endpoint::Sink => SINK,
            Endpoint::Vertex(id) => id,
        }
    }

    fn time_reversed(&self) -> Self {
        match self {
            Endpoint::Source => Endpoint::Sink,
            Endpoint::Sink => Endpoint::Source,
            v => v.clone(),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: Endpoint,
    pub to: Endpoint,
    pub species: Species,
    pub multiplicity: u32,
}

impl Edge {
    pub fn new(from: &str, to: &str, species: Species, multiplicity: u32) -> Self {
        Self {
            from: Endpoint::parse(from),
            to: Endpoint::parse(to),
            species,
            multiplicity,
        }
    }

    /// The same edge run backwards with its species conjugated.
    pub fn conjugated(&self) -> Self {
        Self {
            from: self.to.time_reversed(),
            to: self.from.time_reversed(),
            species: self.species.conjugate(),
            multiplicity: self.multiplicity,
        }
    }
}

/// A directed multigraph of M/U vertices with species-labelled edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoDiagram {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl InfoDiagram {
    /// Validates unique vertex ids, known endpoints, edge direction relative
    /// to SOURCE/SINK, and multiplicities of at least 1.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if v.id == SOURCE || v.id == SINK || v.id.is_empty() {
                return Err(Error::InvalidDiagram(alloc::format!(
                    "reserved or empty vertex id {:?}",
                    v.id
                )));
            }
            if vertices[..i].iter().any(|w| w.id == v.id) {
                return Err(Error::InvalidDiagram(alloc::format!(
                    "duplicate vertex id {:?}",
                    v.id
                )));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            for end in [&e.from, &e.to] {
                if let Endpoint::Vertex(id) = end {
                    if !vertices.iter().any(|v| &v.id == id) {
                        return Err(Error::UnknownVertex(id.clone()));
                    }
                }
            }
            if e.from == Endpoint::Sink || e.to == Endpoint::Source {
                return Err(Error::InvalidDiagram(alloc::format!(
                    "edge {i} runs out of SINK or into SOURCE"
                )));
            }
            if e.multiplicity == 0 {
                return Err(Error::InvalidDiagram(alloc::format!(
                    "edge {i} has multiplicity 0"
                )));
            }
        }
        Ok(Self { vertices, edges })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Every edge reversed and SOURCE/SINK exchanged. With `swap_species`
    /// each species is also conjugated (classical bits are unchanged).
    pub fn time_reversed(&self, swap_species: bool) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                from: e.to.time_reversed(),
                to: e.from.time_reversed(),
                species: if swap_species {
                    e.species.conjugate()
                } else {
                    e.species
                },
                multiplicity: e.multiplicity,
            })
            .collect();
        Self {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// Reverse the listed edges and conjugate their species. Classical edges
    /// cannot travel backwards and are rejected.
    pub fn conjugate_edges(&self, indices: &[usize]) -> Result<Self> {
        let mut edges = self.edges.clone();
        for &i in indices {
            let e = edges
                .get(i)
                .ok_or_else(|| Error::InvalidDiagram(alloc::format!("no edge with index {i}")))?;
            if e.species.is_classical() {
                return Err(Error::InvalidDiagram(alloc::format!(
                    "edge {i} is classical"
                )));
            }
            edges[i] = e.conjugated();
        }
        Ok(Self {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    /// Barred edges rewritten as unbarred edges running the other way, then
    /// sorted with parallel edges merged. Two diagrams that differ only by
    /// time-reversing quantum lines have the same canonical form.
    pub fn canonical(&self) -> Self {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                if e.species.is_barred() {
                    e.conjugated()
                } else {
                    e.clone()
                }
            })
            .collect();
        edges.sort_by(|a, b| (&a.from, &a.to, a.species).cmp(&(&b.from, &b.to, b.species)));
        let mut merged: Vec<Edge> = Vec::with_capacity(edges.len());
        for e in edges {
            match merged.last_mut() {
                Some(last)
                    if last.from == e.from && last.to == e.to && last.species == e.species =>
                {
                    last.multiplicity += e.multiplicity;
                }
                _ => merged.push(e),
            }
        }
        let mut vertices = self.vertices.clone();
        vertices.sort();
        Self {
            vertices,
            edges: merged,
        }
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Entropy in and out of one vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexBalance {
    pub id: String,
    pub kind: VertexKind,
    pub incoming: f64,
    pub outgoing: f64,
}

impl VertexBalance {
    pub fn residual(&self) -> f64 {
        self.incoming - self.outgoing
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConservationReport {
    pub vertices: Vec<VertexBalance>,
}

impl ConservationReport {
    pub fn max_residual(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.residual().abs())
            .fold(0.0, f64::max)
    }

    pub fn balanced(&self) -> bool {
        self.max_residual() == 0.0
    }

    pub fn violations(&self) -> impl Iterator<Item = &VertexBalance> {
        self.vertices.iter().filter(|v| v.residual() != 0.0)
    }
}

/// Weighted in-minus-out entropy at every vertex.
pub fn check_conservation(d: &InfoDiagram, w: &SpeciesWeights) -> ConservationReport {
    let vertices = d
        .vertices
        .iter()
        .map(|v| {
            let sum = |pick: fn(&Edge) -> &Endpoint| -> f64 {
                d.edges
                    .iter()
                    .filter(|e| matches!(pick(e), Endpoint::Vertex(id) if *id == v.id))
                    .map(|e| w.weight(e.species) * f64::from(e.multiplicity))
                    .sum()
            };
            VertexBalance {
                id: v.id.clone(),
                kind: v.kind,
                incoming: sum(|e| &e.to),
                outgoing: sum(|e| &e.from),
            }
        })
        .collect();
    ConservationReport { vertices }
}

fn mu_vertices() -> Vec<Vertex> {
    alloc::vec![
        Vertex {
            id: "M".to_string(),
            kind: VertexKind::M
        },
        Vertex {
            id: "U".to_string(),
            kind: VertexKind::U
        }
    ]
}

/// `"fig1"` teleportation, `"fig2"` superdense coding with an antiebit into
/// U, `"fig3"` superdense coding with the ebit drawn leaving U.
pub fn builtin_diagram(name: &str) -> Result<InfoDiagram> {
    use Species::*;
    let edges = match name {
        "fig1" => alloc::vec![
            Edge::new(SOURCE, "M", Q, 1),
            Edge::new("U", "M", E, 1),
            Edge::new("M", "U", C, 2),
            Edge::new("U", SINK, Q, 1),
        ],
        "fig2" => alloc::vec![
            Edge::new(SOURCE, "U", C, 2),
            Edge::new("M", "U", EBar, 1),
            Edge::new("U", "M", Q, 1),
            Edge::new("M", SINK, C, 2),
        ],
        "fig3" => alloc::vec![
            Edge::new(SOURCE, "U", C, 2),
            Edge::new("U", "M", E, 1),
            Edge::new("U", "M", Q, 1),
            Edge::new("M", SINK, C, 2),
        ],
        other => {
            return Err(Error::InvalidDiagram(alloc::format!(
                "no builtin diagram {other:?}"
            )))
        }
    };
    InfoDiagram::new(mu_vertices(), edges)
}

pub fn builtin_diagrams() -> Vec<(&'static str, InfoDiagram)> {
    ["fig1", "fig2", "fig3"]
        .into_iter()
        .map(|n| (n, builtin_diagram(n).expect("builtin")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn balance(d: &InfoDiagram, id: &str) -> VertexBalance {
        check_conservation(d, &SpeciesWeights::default())
            .vertices
            .into_iter()
            .find(|v| v.id == id)
            .unwrap()
    }

    #[test]
    fn teleportation_vertices() {
        let d = builtin_diagram("fig1").unwrap();
        let m = balance(&d, "M");
        assert_eq!((m.incoming, m.outgoing), (2.0, 2.0));
        // U: 2c + ebar (its outgoing e) in, q out
        let u = balance(&d, "U");
        assert_eq!(u.residual(), 0.0);
        assert_eq!(u.incoming - u.outgoing, 2.0 - 1.0 - 1.0);
    }

    #[test]
    fn all_builtins_balance() {
        for (name, d) in builtin_diagrams() {
            let r = check_conservation(&d, &SpeciesWeights::default());
            assert!(r.balanced(), "{name}: {r:?}");
        }
    }

    #[test]
    fn malformed_vertex_is_reported() {
        let d = InfoDiagram::new(
            vec![Vertex {
                id: "M".into(),
                kind: VertexKind::M,
            }],
            vec![
                Edge::new(SOURCE, "M", Species::Q, 1),
                Edge::new("M", SINK, Species::C, 2),
            ],
        )
        .unwrap();
        let r = check_conservation(&d, &SpeciesWeights::default());
        assert!(!r.balanced());
        assert_eq!(r.vertices[0].residual(), -1.0);
        assert_eq!(r.violations().count(), 1);
    }

    #[test]
    fn fig3_is_fig2_time_reversed_ebit() {
        let f2 = builtin_diagram("fig2").unwrap();
        let f3 = builtin_diagram("fig3").unwrap();
        assert_ne!(f2, f3);
        assert!(f2.equivalent(&f3));
        assert_eq!(f2.conjugate_edges(&[1]).unwrap(), f3);
        assert!(!f2.equivalent(&builtin_diagram("fig1").unwrap()));
    }

    #[test]
    fn reversal_with_classical_edges() {
        let w = SpeciesWeights::default();
        for (_, d) in builtin_diagrams() {
            assert!(check_conservation(&d.time_reversed(false), &w).balanced());
            // classical lines keep their sign, so a full swap unbalances
            assert!(!check_conservation(&d.time_reversed(true), &w).balanced());
            let quantum: Vec<usize> = d
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.species.is_classical())
                .map(|(i, _)| i)
                .collect();
            assert!(check_conservation(&d.conjugate_edges(&quantum).unwrap(), &w).balanced());
        }
        assert!(builtin_diagram("fig1")
            .unwrap()
            .conjugate_edges(&[2])
            .is_err());
    }

    #[test]
    fn validation() {
        let v = mu_vertices();
        assert!(matches!(
            InfoDiagram::new(v.clone(), vec![Edge::new(SOURCE, "X", Species::Q, 1)]),
            Err(Error::UnknownVertex(_))
        ));
        assert!(InfoDiagram::new(v.clone(), vec![Edge::new(SOURCE, "M", Species::Q, 0)]).is_err());
        assert!(InfoDiagram::new(v.clone(), vec![Edge::new(SINK, "M", Species::Q, 1)]).is_err());
        let mut dup = v.clone();
        dup.push(v[0].clone());
        assert!(InfoDiagram::new(dup, vec![]).is_err());
        assert!("qq".parse::<Species>().is_err());
        assert_eq!("ebar".parse::<Species>().unwrap(), Species::EBar);
        assert!(builtin_diagram("fig4").is_err());
    }

    #[test]
    fn weights_conjugate_pairs() {
        let w = SpeciesWeights::default();
        for s in Species::ALL {
            if !s.is_classical() {
                assert_eq!(w.weight(s), -w.weight(s.conjugate()));
            }
        }
    }
}
