//! Gallai-Edmonds decomposition and the stability test.

use crate::graph::{Graph, Vertex};
use crate::matching::{matching_exposing, matching_number};

/// Which part of the decomposition a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// Inessential: exposed by some maximum matching.
    X,
    /// Tutte set: neighbours of `X` outside `X`.
    Y,
    Z,
}

/// The partition `V = X ∪ Y ∪ Z` with the components of `G[X]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeDecomposition {
    part: Vec<Part>,
    x: Vec<Vertex>,
    y: Vec<Vertex>,
    z: Vec<Vertex>,
    components: Vec<Vec<Vertex>>,
    component_of: Vec<Option<usize>>,
}

impl GeDecomposition {
    pub fn n(&self) -> usize {
        self.part.len()
    }

    pub fn x(&self) -> &[Vertex] {
        &self.x
    }

    /// The Tutte set.
    pub fn y(&self) -> &[Vertex] {
        &self.y
    }

    pub fn z(&self) -> &[Vertex] {
        &self.z
    }

    pub fn part(&self, v: Vertex) -> Part {
        self.part[v]
    }

    /// Components of `G[X]`, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> &[Vec<Vertex>] {
        &self.components
    }

    pub fn component_of(&self, v: Vertex) -> Option<usize> {
        self.component_of[v]
    }

    pub fn is_trivial(&self, component: usize) -> bool {
        self.components[component].len() == 1
    }

    pub fn trivial_flags(&self) -> Vec<bool> {
        (0..self.components.len()).map(|i| self.is_trivial(i)).collect()
    }

    pub fn nontrivial_count(&self) -> usize {
        self.components.iter().filter(|k| k.len() > 1).count()
    }

    /// Number of components exposed by every maximum matching:
    /// `#components − |Y|`.
    pub fn surplus(&self) -> usize {
        self.components.len() - self.y.len()
    }
}

/// `{ v : ν(G − v) = ν(G) }`, one essentiality test per vertex.
pub fn inessential_vertices(g: &Graph) -> Vec<Vertex> {
    let nu = matching_number(g);
    (0..g.n()).filter(|&v| matching_number(&g.isolate(v)) == nu).collect()
}

pub fn decompose(g: &Graph) -> GeDecomposition {
    let n = g.n();
    let x = inessential_vertices(g);
    let mut part = vec![Part::Z; n];
    for &v in &x {
        part[v] = Part::X;
    }
    for v in g.neighborhood(&x) {
        part[v] = Part::Y;
    }
    let pick = |p: Part| (0..n).filter(|&v| part[v] == p).collect::<Vec<_>>();
    let mask: Vec<bool> = part.iter().map(|&p| p == Part::X).collect();
    let components = g.components_within(&mask);
    let mut component_of = vec![None; n];
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = Some(i);
        }
    }
    GeDecomposition { y: pick(Part::Y), z: pick(Part::Z), x, part, components, component_of }
}

/// A graph is stable iff its inessential vertices form an independent set.
pub fn is_stable(g: &Graph) -> bool {
    let d = decompose(g);
    d.components.iter().all(|k| k.len() == 1)
}

/// Odd order and a near-perfect matching avoiding every single vertex.
pub fn is_factor_critical(g: &Graph) -> bool {
    g.n() % 2 == 1 && (0..g.n()).all(|w| matching_exposing(g, w).is_some())
}
