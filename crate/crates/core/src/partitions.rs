//! Young diagrams in the column convention: λᵢ is the length of the i-th column.

use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YoungDiagram {
    lambda: Vec<u32>,
}

impl YoungDiagram {
    pub fn empty() -> Self {
        YoungDiagram { lambda: Vec::new() }
    }

    /// Panics unless `lambda` is weakly decreasing; trailing zeros are dropped.
    pub fn new(mut lambda: Vec<u32>) -> Self {
        while lambda.last() == Some(&0) {
            lambda.pop();
        }
        assert!(lambda.windows(2).all(|w| w[0] >= w[1]), "not a partition: {lambda:?}");
        YoungDiagram { lambda }
    }

    pub fn parts(&self) -> &[u32] {
        &self.lambda
    }

    pub fn size(&self) -> u32 {
        self.lambda.iter().sum()
    }

    /// Number of columns l(Y).
    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// λᵢ, 1-based, zero beyond l(Y).
    pub fn part(&self, i: usize) -> i64 {
        if i >= 1 && i <= self.lambda.len() {
            self.lambda[i - 1] as i64
        } else {
            0
        }
    }

    pub fn transpose(&self) -> YoungDiagram {
        let top = self.lambda.first().copied().unwrap_or(0);
        let t = (1..=top)
            .map(|j| self.lambda.iter().filter(|&&l| l >= j).count() as u32)
            .collect();
        YoungDiagram { lambda: t }
    }

    /// a_Y(i,j) = λᵢ − j; negative outside the diagram.
    pub fn arm(&self, i: usize, j: usize) -> i64 {
        self.part(i) - j as i64
    }

    /// l_Y(i,j) = λ′ⱼ − i.
    pub fn leg(&self, i: usize, j: usize) -> i64 {
        let col_j = self.lambda.iter().filter(|&&l| l as usize >= j).count() as i64;
        col_j - i as i64
    }

    /// Boxes (i,j) with 1 ≤ j ≤ λᵢ.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.lambda
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (1..=l as usize).map(move |j| (i + 1, j)))
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.lambda.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YoungTuple(pub Vec<YoungDiagram>);

impl YoungTuple {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().map(|y| y.size()).sum()
    }

    pub fn transpose(&self) -> YoungTuple {
        YoungTuple(self.0.iter().map(|y| y.transpose()).collect())
    }
}

impl fmt::Display for YoungTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|y| y.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// Partitions of n in lexicographic order of their (weakly decreasing) part lists.
pub fn partitions(n: u32) -> Vec<YoungDiagram> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if n == 0 {
            out.push(YoungDiagram::new(cur.clone()));
            return;
        }
        for p in 1..=max.min(n) {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All r-tuples of diagrams with n boxes in total, ordered by the size
/// composition and then lexicographically.
pub fn enumerate_tuples(r: usize, n: u32) -> Vec<YoungTuple> {
    assert!(r >= 1);
    let parts: Vec<Vec<YoungDiagram>> = (0..=n).map(partitions).collect();
    let mut out = Vec::new();
    let mut comp = vec![0u32; r];
    fn compositions(k: usize, left: u32, comp: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if k + 1 == comp.len() {
            comp[k] = left;
            f(comp);
            return;
        }
        for a in 0..=left {
            comp[k] = a;
            compositions(k + 1, left - a, comp, f);
        }
    }
    compositions(0, n, &mut comp, &mut |c: &[u32]| {
        let mut acc: Vec<Vec<YoungDiagram>> = vec![Vec::new()];
        for &ni in c {
            let mut next = Vec::new();
            for prefix in &acc {
                for y in &parts[ni as usize] {
                    let mut p = prefix.clone();
                    p.push(y.clone());
                    next.push(p);
                }
            }
            acc = next;
        }
        out.extend(acc.into_iter().map(YoungTuple));
    });
    out
}

/// p(0..=max), the coefficients of Π(1 − xᵐ)⁻¹.
pub fn partition_counts(max: usize) -> Vec<u64> {
    let mut p = vec![0u64; max + 1];
    p[0] = 1;
    for m in 1..=max {
        for n in m..=max {
            p[n] += p[n - m];
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpose_examples() {
        assert_eq!(
            YoungDiagram::new(vec![3, 1]).transpose(),
            YoungDiagram::new(vec![2, 1, 1])
        );
        assert_eq!(YoungDiagram::empty().transpose(), YoungDiagram::empty());
        let y = YoungDiagram::new(vec![4, 2, 2, 1]);
        assert_eq!(y.transpose().transpose(), y);
    }

    #[test]
    fn arm_leg_examples() {
        let y = YoungDiagram::new(vec![3, 1]);
        assert_eq!((y.arm(1, 1), y.leg(1, 1)), (2, 1));
        assert_eq!(YoungDiagram::new(vec![1]).arm(2, 1), -1);
        let e = YoungDiagram::empty();
        assert_eq!((e.arm(2, 3), e.leg(2, 3)), (-3, -2));
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(enumerate_tuples(1, 2).len(), 2);
        assert_eq!(enumerate_tuples(2, 1).len(), 2);
        assert_eq!(enumerate_tuples(2, 5).len(), 36);
    }

    #[test]
    fn partitions_lex_order() {
        let p: Vec<Vec<u32>> = partitions(3).iter().map(|y| y.parts().to_vec()).collect();
        assert_eq!(p, vec![vec![1, 1, 1], vec![2, 1], vec![3]]);
    }
}
