//! Dynkin diagrams derived from a gram matrix, plus DOT export.

use crate::root::Parity;
use crate::scalar::{Rat, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramNode {
    pub index: usize,
    pub label: String,
    pub parity: Parity,
    pub isotropic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub from: usize,
    pub to: usize,
    pub mult: u32,
    /// Node index the arrow points at (towards the shorter root), if any.
    pub arrow_to: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<DiagramEdge>,
}

impl DynkinDiagram {
    /// Edge data is a pure function of the gram matrix: for two
    /// non-isotropic nodes the multiplicity is |a_ij·a_ji| with
    /// a_ij = 2(α_i,α_j)/(α_j,α_j); with one isotropic endpoint it is
    /// |2(γ,β)/(β,β)|; with two isotropic endpoints any non-orthogonal pair
    /// gets a single edge.
    pub fn from_gram(gram: &[Vec<Scalar>], parities: &[Parity], labels: &[String]) -> Self {
        let n = gram.len();
        let iso: Vec<bool> = (0..n).map(|i| gram[i][i].is_zero()).collect();
        let nodes = (0..n)
            .map(|i| DiagramNode {
                index: i,
                label: labels[i].clone(),
                parity: parities[i],
                isotropic: iso[i],
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[i][j].is_zero() {
                    continue;
                }
                let (mult, arrow_to) = edge_data(gram, &iso, i, j);
                edges.push(DiagramEdge {
                    from: i,
                    to: j,
                    mult,
                    arrow_to,
                });
            }
        }
        DynkinDiagram { nodes, edges }
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph \"{name}\" {{\n"));
        for node in &self.nodes {
            let parity = match node.parity {
                Parity::Even => "even",
                Parity::Odd => "odd",
            };
            out.push_str(&format!(
                "  n{} [label=\"{}\" parity={} isotropic={}];\n",
                node.index, node.label, parity, node.isotropic
            ));
        }
        for e in &self.edges {
            let arrow = match e.arrow_to {
                Some(t) => format!(" arrow_to=n{t}"),
                None => String::new(),
            };
            out.push_str(&format!(
                "  n{} -- n{} [mult={}{}];\n",
                e.from, e.to, e.mult, arrow
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            let mark = if node.isotropic {
                "(x)"
            } else if node.parity == Parity::Odd {
                "(*)"
            } else {
                "( )"
            };
            out.push_str(&format!("{mark} {}\n", node.label));
        }
        for e in &self.edges {
            let arrow = match e.arrow_to {
                Some(t) if t == e.to => " ->",
                Some(_) => " <-",
                None => "",
            };
            out.push_str(&format!(
                "{} --{}-- {}{arrow}\n",
                self.nodes[e.from].label, e.mult, self.nodes[e.to].label
            ));
        }
        out
    }
}

fn edge_data(gram: &[Vec<Scalar>], iso: &[bool], i: usize, j: usize) -> (u32, Option<usize>) {
    let val = gram[i][j];
    let ni = gram[i][i];
    let nj = gram[j][j];
    match (iso[i], iso[j]) {
        (true, true) => (1, None),
        (true, false) => (cartan_abs(&val, &nj), None),
        (false, true) => (cartan_abs(&val, &ni), None),
        (false, false) => {
            let aij = cartan_abs(&val, &nj);
            let aji = cartan_abs(&val, &ni);
            let mult = aij * aji;
            let arrow = if mult > 1 {
                // Arrow towards the shorter root (smaller |(α,α)|).
                match abs_cmp(&ni, &nj) {
                    std::cmp::Ordering::Greater => Some(j),
                    std::cmp::Ordering::Less => Some(i),
                    std::cmp::Ordering::Equal => None,
                }
            } else {
                None
            };
            (mult, arrow)
        }
    }
}

/// |2(α,β)/(β,β)| as an integer; panics on a genuinely non-integral Cartan
/// value, which cannot arise from a valid base.
fn cartan_abs(val: &Scalar, norm: &Scalar) -> u32 {
    let ratio = val
        .try_div(norm)
        .expect("Cartan ratio of base roots must be rational");
    let twice = ratio * Rat::from_integer(2);
    assert!(twice.is_integer(), "non-integral Cartan value {twice}");
    twice.to_integer().unsigned_abs() as u32
}

fn abs_cmp(x: &Scalar, y: &Scalar) -> std::cmp::Ordering {
    // Compare |x| and |y| via the rational ratio; falls back to Equal when
    // the ratio is not rational (never happens for edge-connected pairs of
    // the implemented families).
    match x.try_div(y) {
        Some(r) => {
            let a = if r < Rat::from_integer(0) { -r } else { r };
            a.cmp(&Rat::from_integer(1))
        }
        None => std::cmp::Ordering::Equal,
    }
}
