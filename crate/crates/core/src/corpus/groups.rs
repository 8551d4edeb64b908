use std::collections::BTreeSet;

use crate::error::{invalid, Result};

/// A finite group by multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub names: Vec<String>,
    /// `mul[g][h]` is the index of `gh`.
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
}

impl GroupTable {
    /// Validates the table and derives inverses and identity.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 || names.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(invalid("group table must be a square table of valid indices"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| invalid("group table has no identity"))?;
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| invalid(format!("element {} has no inverse", names[g])))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(invalid("group table is not associative"));
                    }
                }
            }
        }
        Ok(Self {
            names,
            mul,
            inv,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("cyclic group of order 0"));
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(names, mul)
    }

    /// The group generated by permutations of `{0, …, m-1}`, with elements
    /// named in cycle notation (1-based) and sorted by that name.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let m = gens.first().map(|g| g.len()).unwrap_or(0);
        let id: Vec<usize> = (0..m).collect();
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in gens {
                if g.len() != m {
                    return Err(invalid("permutations of different degrees"));
                }
                let q = compose(g, &p);
                if elems.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let mut list: Vec<Vec<usize>> = elems.into_iter().collect();
        list.sort_by_key(|p| (cycle_name(p) != "e", cycle_name(p)));
        let index = |p: &Vec<usize>| list.iter().position(|q| q == p).expect("closed");
        let mul = list
            .iter()
            .map(|a| list.iter().map(|b| index(&compose(a, b))).collect())
            .collect();
        Self::from_table(list.iter().map(|p| cycle_name(p)).collect(), mul)
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    /// Symmetries of a square acting on its vertices 0..3.
    pub fn dihedral4() -> Self {
        Self::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).expect("D4")
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Closure of a set of elements under multiplication.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul[x][g];
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, k: &[usize]) -> bool {
        let set: BTreeSet<usize> = k.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| {
                set.contains(&self.inv[a]) && set.iter().all(|&b| set.contains(&self.mul[a][b]))
            })
    }

    /// All subgroups generated by at most two elements, ordered by size and
    /// then lexicographically. For the groups in the corpus this is every
    /// subgroup.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                let k = self.generated(&[a, b]);
                found.insert((k.len(), k));
            }
        }
        found.into_iter().map(|(_, k)| k).collect()
    }

    /// Right cosets `Kx`, each sorted, in order of first element.
    pub fn right_cosets(&self, k: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for x in 0..self.order() {
            if seen[x] {
                continue;
            }
            let mut coset: Vec<usize> = k.iter().map(|&h| self.mul[h][x]).collect();
            coset.sort_unstable();
            for &y in &coset {
                seen[y] = true;
            }
            out.push(coset);
        }
        out
    }
}

/// `(p∘q)(i) = p(q(i))`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}
