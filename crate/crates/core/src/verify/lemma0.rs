use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::exactalg::{AlgebraBasis, CoherentConfiguration};
use crate::matrix::{Rational, RationalMatrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma0Source {
    Coherent,
    Adjacency,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma0Part {
    pub holds: bool,
    /// The hypothesis of this part is not met, so it holds trivially.
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Lemma0Part {
    fn vacuous() -> Self {
        Lemma0Part {
            holds: true,
            vacuous: true,
            witness: None,
        }
    }

    fn checked(witness: Option<String>) -> Self {
        Lemma0Part {
            holds: witness.is_none(),
            vacuous: false,
            witness,
        }
    }
}

/// Exact row/column-sum facts for a homogeneous algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma0Report {
    pub source: Lemma0Source,
    pub homogeneous: bool,
    pub contains_j: bool,
    /// Elements that are 0/1 matrices.
    pub zero_one_elements: Vec<usize>,
    /// 0/1 elements whose digraph is strongly connected.
    pub irreducible_elements: Vec<usize>,
    /// Constant row sum of each element, `None` when not constant.
    pub row_sums: Vec<Option<String>>,
    pub col_sums: Vec<Option<String>>,
    /// Every 0/1 element has constant row and column sums.
    pub constant_sums: Lemma0Part,
    /// An irreducible 0/1 element forces `J` into the algebra.
    pub irreducible_gives_j: Lemma0Part,
    /// With `J` present, row sums equal column sums for every element.
    pub j_central: Lemma0Part,
}

impl Lemma0Report {
    pub fn passed(&self) -> bool {
        !self.homogeneous || (self.constant_sums.holds && self.irreducible_gives_j.holds && self.j_central.holds)
    }
}

fn constant<T: PartialEq + Clone>(v: &[T]) -> Option<T> {
    let first = v.first()?;
    v.iter().all(|x| x == first).then(|| first.clone())
}

/// Strong connectivity of the digraph `u -> v` for `arc(u, v)`.
fn strongly_connected(n: usize, arc: impl Fn(usize, usize) -> bool) -> bool {
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                let e = if forward { arc(u, v) } else { arc(v, u) };
                if e && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    n > 0 && reach(true) && reach(false)
}

struct ElementSums {
    rows: Vec<Option<Rational>>,
    cols: Vec<Option<Rational>>,
}

fn assemble(
    source: Lemma0Source,
    homogeneous: bool,
    contains_j: bool,
    zero_one: Vec<usize>,
    irreducible: Vec<usize>,
    sums: ElementSums,
) -> Lemma0Report {
    let constant_sums = Lemma0Part::checked(
        zero_one
            .iter()
            .find(|&&k| sums.rows[k].is_none() || sums.cols[k].is_none())
            .map(|k| format!("element {k} has non-constant row or column sums")),
    );
    let irreducible_gives_j = match irreducible.first() {
        None => Lemma0Part::vacuous(),
        Some(k) => Lemma0Part::checked((!contains_j).then(|| format!("element {k} is irreducible but J is missing"))),
    };
    let j_central = if contains_j {
        Lemma0Part::checked((0..sums.rows.len()).find_map(|k| match (&sums.rows[k], &sums.cols[k]) {
            (Some(r), Some(c)) if r == c => None,
            _ => Some(format!("element {k} has unequal or non-constant row and column sums")),
        }))
    } else {
        Lemma0Part::vacuous()
    };
    let show = |v: &Vec<Option<Rational>>| v.iter().map(|x| x.as_ref().map(|r| r.to_string())).collect();
    Lemma0Report {
        source,
        homogeneous,
        contains_j,
        zero_one_elements: zero_one,
        irreducible_elements: irreducible,
        row_sums: show(&sums.rows),
        col_sums: show(&sums.cols),
        constant_sums,
        irreducible_gives_j,
        j_central,
    }
}

/// Lemma checks on the classes of a coherent configuration, from the colour
/// map alone.
pub fn lemma0_configuration(c: &CoherentConfiguration) -> Lemma0Report {
    let n = c.n();
    let d = c.class_count();
    let mut rows = vec![vec![0i64; n]; d];
    let mut cols = vec![vec![0i64; n]; d];
    for u in 0..n {
        for v in 0..n {
            let k = c.color(u, v);
            rows[k][u] += 1;
            cols[k][v] += 1;
        }
    }
    let as_rational = |v: &[i64]| constant(v).map(Rational::from_int);
    let sums = ElementSums {
        rows: rows.iter().map(|r| as_rational(r)).collect(),
        cols: cols.iter().map(|r| as_rational(r)).collect(),
    };
    let irreducible = (0..d)
        .filter(|&k| strongly_connected(n, |u, v| c.color(u, v) == k))
        .collect();
    assemble(
        Lemma0Source::Coherent,
        c.is_homogeneous(),
        c.is_partition(),
        (0..d).collect(),
        irreducible,
        sums,
    )
}

fn is_zero_one(m: &RationalMatrix) -> bool {
    let (zero, one) = (Rational::from_int(0), Rational::from_int(1));
    m.as_slice().iter().all(|v| *v == zero || *v == one)
}

/// Lemma checks on the orthogonal basis of an adjacency algebra.
pub fn lemma0_algebra(b: &AlgebraBasis) -> Lemma0Report {
    let n = b.n();
    let elements = b.elements();
    let homogeneous = elements
        .iter()
        .all(|e| (1..n).all(|i| e[(i, i)] == e[(0, 0)]));
    let zero_one: Vec<usize> = (0..elements.len()).filter(|&k| is_zero_one(&elements[k])).collect();
    let zero = Rational::from_int(0);
    let irreducible = zero_one
        .iter()
        .copied()
        .filter(|&k| strongly_connected(n, |u, v| elements[k][(u, v)] != zero))
        .collect();
    let sums = ElementSums {
        rows: elements.iter().map(|e| constant(&e.row_sums())).collect(),
        cols: elements.iter().map(|e| constant(&e.col_sums())).collect(),
    };
    assemble(
        Lemma0Source::Adjacency,
        homogeneous,
        b.contains_j(),
        zero_one,
        irreducible,
        sums,
    )
}
