//! Finite-dimensional coalgebras over the rationals, given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{fmt_q, inverse, parse_q, q, zeros, Q};

/// `Δ(e_i) = Σ delta[i][j][k] e_j ⊗ e_k`, `ε(e_i) = counit[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    labels: Vec<String>,
    /// Dense `n × n × n` tensor, index `(i * n + j) * n + k`.
    delta: Vec<Q>,
    counit: Vec<Q>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Coassociativity,
    LeftCounit,
    RightCounit,
}

/// First basis element at which an axiom fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub index: usize,
    pub label: String,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.axiom {
            Axiom::Coassociativity => "coassociativity",
            Axiom::LeftCounit => "left counit law",
            Axiom::RightCounit => "right counit law",
        };
        write!(f, "{name} fails at basis element {} ({})", self.index, self.label)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    fn value(&self) -> Result<Q> {
        match self {
            Scalar::Int(n) => Ok(q(*n)),
            Scalar::Text(s) => parse_q(s).ok_or_else(|| Error::Coalgebra(format!("bad rational {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoalgebraJson {
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    delta: Vec<(usize, usize, usize, Scalar)>,
    counit: Vec<Scalar>,
    #[serde(default)]
    field: Option<String>,
}

impl Coalgebra {
    /// Builds from sparse comultiplication terms; repeated terms are summed.
    pub fn new<I>(labels: Vec<String>, terms: I, counit: Vec<Q>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Q)>,
    {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Coalgebra("dimension must be positive".into()));
        }
        if counit.len() != n {
            return Err(Error::Coalgebra(format!("counit has {} values for dimension {n}", counit.len())));
        }
        let mut delta = zeros(n * n * n);
        for (i, j, k, c) in terms {
            if i >= n || j >= n || k >= n {
                return Err(Error::Coalgebra(format!("delta index ({i},{j},{k}) out of range for dimension {n}")));
            }
            delta[(i * n + j) * n + k] += c;
        }
        Ok(Coalgebra { labels, delta, counit })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn counit(&self) -> &[Q] {
        &self.counit
    }

    /// Coefficient of `e_j ⊗ e_k` in `Δ(e_i)`.
    pub fn coef(&self, i: usize, j: usize, k: usize) -> &Q {
        let n = self.dim();
        &self.delta[(i * n + j) * n + k]
    }

    /// Nonzero terms of `Δ(e_i)` as `(j, k, coefficient)`.
    pub fn terms(&self, i: usize) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
        let n = self.dim();
        self.delta[i * n * n..(i + 1) * n * n]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(jk, c)| (jk / n, jk % n, c))
    }

    /// `Δ(v)` as a dense `n × n` matrix of coefficients.
    pub fn delta_of(&self, v: &[Q]) -> Vec<Vec<Q>> {
        let n = self.dim();
        let mut out = vec![zeros(n); n];
        for (i, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, k, c) in self.terms(i) {
                out[j][k] += x * c;
            }
        }
        out
    }

    /// Checks coassociativity and both counit laws exactly.
    pub fn validate(&self) -> Vec<AxiomFailure> {
        let n = self.dim();
        let mut out = Vec::new();
        let fail = |axiom, i: usize| AxiomFailure { axiom, index: i, label: self.labels[i].clone() };
        for i in 0..n {
            let mut lhs: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
            for (j, k, c) in self.terms(i) {
                for (a, b, d) in self.terms(j) {
                    *lhs.entry((a, b, k)).or_insert_with(Q::zero) += c * d;
                }
                for (a, b, d) in self.terms(k) {
                    *rhs.entry((j, a, b)).or_insert_with(Q::zero) += c * d;
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                out.push(fail(Axiom::Coassociativity, i));
                break;
            }
        }
        let laws = [(Axiom::LeftCounit, true), (Axiom::RightCounit, false)];
        for (axiom, left) in laws {
            for i in 0..n {
                let mut image = zeros(n);
                for (j, k, c) in self.terms(i) {
                    let (eps, keep) = if left { (j, k) } else { (k, j) };
                    image[keep] += c * &self.counit[eps];
                }
                let ok = image.iter().enumerate().all(|(m, x)| *x == if m == i { Q::one() } else { Q::zero() });
                if !ok {
                    out.push(fail(axiom, i));
                    break;
                }
            }
        }
        out
    }

    /// The same coalgebra in the basis `b_i = Σ_j p[j][i] e_j` (columns of `p`).
    pub fn change_basis(&self, p: &[Vec<Q>]) -> Result<Coalgebra> {
        let n = self.dim();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::Coalgebra("basis change must be a square matrix of the coalgebra dimension".into()));
        }
        let pinv = inverse(p).ok_or_else(|| Error::Coalgebra("basis change matrix is singular".into()))?;
        let mut terms = Vec::new();
        let mut counit = zeros(n);
        for i in 0..n {
            let column: Vec<Q> = (0..n).map(|j| p[j][i].clone()).collect();
            let d = self.delta_of(&column);
            // Re-express both tensor legs: e_k = Σ_a pinv[a][k] b_a.
            let left: Vec<Vec<Q>> = (0..n)
                .map(|a| (0..n).map(|l| (0..n).fold(Q::zero(), |s, k| s + &pinv[a][k] * &d[k][l])).collect())
                .collect();
            for (a, row) in left.iter().enumerate() {
                for b in 0..n {
                    let c = (0..n).fold(Q::zero(), |s, l| s + &row[l] * &pinv[b][l]);
                    if !c.is_zero() {
                        terms.push((i, a, b, c));
                    }
                }
            }
            counit[i] = column.iter().zip(&self.counit).fold(Q::zero(), |s, (x, e)| s + x * e);
        }
        let labels = (0..n).map(|i| format!("b{i}")).collect();
        Coalgebra::new(labels, terms, counit)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CoalgebraJson = serde_json::from_str(text).map_err(|e| Error::Coalgebra(e.to_string()))?;
        if let Some(field) = &raw.field {
            if field != "Q" {
                return Err(Error::Coalgebra(format!("unsupported field {field:?}; only \"Q\" is available")));
            }
        }
        let labels = match raw.basis {
            Some(b) if b.len() != raw.dim => {
                return Err(Error::Coalgebra(format!("{} basis labels for dimension {}", b.len(), raw.dim)))
            }
            Some(b) => b,
            None => (0..raw.dim).map(|i| format!("e{i}")).collect(),
        };
        let counit = raw.counit.iter().map(Scalar::value).collect::<Result<Vec<_>>>()?;
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(raw.delta.len());
        for (i, j, k, c) in &raw.delta {
            if !seen.insert((*i, *j, *k)) {
                return Err(Error::Coalgebra(format!("duplicate delta entry ({i},{j},{k})")));
            }
            terms.push((*i, *j, *k, c.value()?));
        }
        Coalgebra::new(labels, terms, counit)
    }

    pub fn to_json(&self) -> String {
        let n = self.dim();
        let mut delta = Vec::new();
        for i in 0..n {
            for (j, k, c) in self.terms(i) {
                delta.push((i, j, k, Scalar::Text(fmt_q(c))));
            }
        }
        let raw = CoalgebraJson {
            dim: n,
            basis: Some(self.labels.clone()),
            delta,
            counit: self.counit.iter().map(|c| Scalar::Text(fmt_q(c))).collect(),
            field: Some("Q".into()),
        };
        serde_json::to_string(&raw).expect("coalgebra serializes")
    }

    // Builders.

    /// Group coalgebra of the cyclic group of order `n`: `Δg = g ⊗ g`.
    pub fn grouplike_cyclic(n: usize) -> Coalgebra {
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let terms = (0..n).map(|i| (i, i, i, Q::one()));
        Coalgebra::new(labels, terms, vec![Q::one(); n]).expect("valid builder")
    }

    /// Basis `1, g, x, gx` with `Δx = x⊗1 + g⊗x` and `Δ(gx) = gx⊗g + 1⊗gx`.
    pub fn sweedler() -> Coalgebra {
        let labels = ["1", "g", "x", "gx"].map(String::from).to_vec();
        let one = Q::one;
        let terms = vec![
            (0, 0, 0, one()),
            (1, 1, 1, one()),
            (2, 2, 0, one()),
            (2, 1, 2, one()),
            (3, 3, 1, one()),
            (3, 0, 3, one()),
        ];
        Coalgebra::new(labels, terms, vec![one(), one(), Q::zero(), Q::zero()]).expect("valid builder")
    }

    /// Matrix coalgebra: `Δe_ij = Σ_k e_ik ⊗ e_kj`, `ε(e_ij) = δ_ij`.
    pub fn matrix(d: usize) -> Coalgebra {
        let idx = |i: usize, j: usize| i * d + j;
        let labels = (0..d * d).map(|m| format!("e{}{}", m / d + 1, m % d + 1)).collect();
        let mut terms = Vec::new();
        let mut counit = zeros(d * d);
        for i in 0..d {
            counit[idx(i, i)] = Q::one();
            for j in 0..d {
                for k in 0..d {
                    terms.push((idx(i, j), idx(i, k), idx(k, j), Q::one()));
                }
            }
        }
        Coalgebra::new(labels, terms, counit).expect("valid builder")
    }

    /// Dual of the group algebra of the symmetric group on `n` letters:
    /// `Δδ_g = Σ_{ab=g} δ_a ⊗ δ_b`, `ε(δ_g) = [g = e]`.
    pub fn dual_symmetric_group(n: usize) -> Coalgebra {
        let perms = permutations(n);
        let pos = |p: &Vec<usize>| perms.iter().position(|x| x == p).expect("closed under composition");
        let labels = perms.iter().map(|p| format!("d{}", p.iter().map(|i| (i + 1).to_string()).collect::<String>())).collect();
        let mut terms = Vec::new();
        for (ia, a) in perms.iter().enumerate() {
            for (ib, b) in perms.iter().enumerate() {
                // (ab)(i) = a(b(i))
                let ab: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                terms.push((pos(&ab), ia, ib, Q::one()));
            }
        }
        let counit = (0..perms.len()).map(|i| if i == 0 { Q::one() } else { Q::zero() }).collect();
        Coalgebra::new(labels, terms, counit).expect("valid builder")
    }

    /// `Δ(a ⊗ b) = Σ (a1 ⊗ b1) ⊗ (a2 ⊗ b2)`.
    pub fn tensor(a: &Coalgebra, b: &Coalgebra) -> Coalgebra {
        let (n, m) = (a.dim(), b.dim());
        let at = |i: usize, j: usize| i * m + j;
        let mut labels = Vec::with_capacity(n * m);
        let mut counit = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                labels.push(format!("{}.{}", a.labels[i], b.labels[j]));
                counit.push(&a.counit[i] * &b.counit[j]);
            }
        }
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..m {
                for (a1, a2, c) in a.terms(i) {
                    for (b1, b2, d) in b.terms(j) {
                        terms.push((at(i, j), at(a1, b1), at(a2, b2), c * d));
                    }
                }
            }
        }
        Coalgebra::new(labels, terms, counit).expect("valid builder")
    }
}

/// All permutations of `0..n` in lexicographic order (identity first).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                go(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}
