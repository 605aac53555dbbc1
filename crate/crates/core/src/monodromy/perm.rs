//! Permutations of sheet labels and the groups they generate.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

/// Permutation of `{0, .., k-1}`; `p[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm((0..k).collect())
    }

    /// Build from images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Disjoint cycles of length at least two.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Perm {
    /// Cycle notation on labels `1..=k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let labels: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", labels.join(" "))?;
        }
        Ok(())
    }
}

/// Orbits of the group generated by `gens` on `{0, .., k-1}`, each sorted,
/// ordered by smallest element.
pub fn orbits(k: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for g in gens {
        for (i, &j) in g.0.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; k];
    for i in 0..k {
        let r = find(&mut parent, i);
        if index[r] == usize::MAX {
            index[r] = out.len();
            out.push(Vec::new());
        }
        out[index[r]].push(i);
    }
    out
}

/// Order of the generated group by closure, or `None` once it exceeds `cap`.
pub fn group_order(k: usize, gens: &[Perm], cap: usize) -> Option<usize> {
    let id = Perm::identity(k);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(h);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_order() {
        let a = Perm(vec![1, 0, 2]);
        let b = Perm(vec![0, 2, 1]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).0, vec![2, 0, 1]);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.then(&b).to_string(), "(1 3 2)");
    }

    #[test]
    fn orbits_and_orders() {
        let t = Perm(vec![1, 0, 2, 3]);
        assert_eq!(orbits(4, std::slice::from_ref(&t)), vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(group_order(4, std::slice::from_ref(&t), 100), Some(2));
        let c = Perm(vec![1, 2, 3, 0]);
        assert_eq!(group_order(4, &[t, c], 100), Some(24));
        assert_eq!(orbits(3, &[]), vec![vec![0], vec![1], vec![2]]);
        assert!(Perm::from_images(vec![0, 0]).is_none());
    }
}
