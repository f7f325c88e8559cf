//! Highest weights, Weyl dimensions, Littlewood-Richardson decompositions,
//! Gelfand-Tsetlin patterns and the spectrum of polynomial fields.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::ValueShape;

/// Dominant gl(4) weight `l1 >= l2 >= l3 >= l4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HighestWeight(pub [i64; 4]);

impl HighestWeight {
    pub fn new(w: [i64; 4]) -> Result<Self> {
        if w.windows(2).all(|p| p[0] >= p[1]) {
            Ok(HighestWeight(w))
        } else {
            Err(Error::NotDominant(w.to_vec()))
        }
    }

    pub fn triple(l1: i64, l2: i64, l3: i64) -> Self {
        HighestWeight::new([l1, l2, l3, 0]).expect("dominant triple")
    }

    /// Subtract `l4 (1,1,1,1)`.
    pub fn normalize(self) -> Self {
        let w = self.0;
        HighestWeight([w[0] - w[3], w[1] - w[3], w[2] - w[3], 0])
    }

    pub fn dim(self) -> u64 {
        weyl_dim(self)
    }

    /// Label of the dual module.
    pub fn dual(self) -> Self {
        let w = self.normalize().0;
        HighestWeight([w[0], w[0] - w[2], w[0] - w[1], 0])
    }

    pub fn of_shape(shape: ValueShape) -> Self {
        let l = shape.label();
        HighestWeight([l[0], l[1], l[2], 0])
    }
}

impl fmt::Display for HighestWeight {
    /// Triple notation `(l1 l2 l3)` after normalization; digits are
    /// separated by commas when any entry exceeds 9.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.normalize().0;
        if w[..3].iter().all(|&x| (0..10).contains(&x)) {
            write!(f, "({}{}{})", w[0], w[1], w[2])
        } else {
            write!(f, "({},{},{})", w[0], w[1], w[2])
        }
    }
}

impl FromStr for HighestWeight {
    type Err = Error;
    /// Accepts `300`, `(311)`, `3,1,1` and `3,1,1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid weight '{s}'"));
        let t: String = s.chars().filter(|c| !matches!(c, '(' | ')' | ' ')).collect();
        let parts: Vec<i64> = if t.contains(',') {
            t.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<_>>()?
        } else if !t.is_empty() && t.chars().all(|c| c.is_ascii_digit()) {
            t.chars().map(|c| c.to_digit(10).unwrap() as i64).collect()
        } else {
            return Err(bad());
        };
        let w = match parts.as_slice() {
            [a, b, c] => [*a, *b, *c, 0],
            [a, b, c, d] => [*a, *b, *c, *d],
            _ => return Err(bad()),
        };
        HighestWeight::new(w)
    }
}

/// `prod_{i<j} (l_i - l_j + j - i) / (j - i)`.
pub fn weyl_dim(w: HighestWeight) -> u64 {
    let l = w.0;
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            num *= (l[i] - l[j] + (j - i) as i64) as i128;
            den *= (j - i) as i128;
        }
    }
    (num / den) as u64
}

/// Multiset of normalized highest weights.
pub type Decomposition = BTreeMap<HighestWeight, u64>;

/// Skew shape `outer / inner` with a filling, one row per entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrTableau {
    pub outer: [i64; 4],
    pub inner: [i64; 4],
    /// Row `r` holds the entries of columns `inner[r]..outer[r]`.
    pub rows: Vec<Vec<u8>>,
}

/// All LR tableaux of shape `nu / lambda` and content `mu`.
pub fn lr_tableaux(nu: [i64; 4], lambda: [i64; 4], mu: [i64; 4]) -> Vec<LrTableau> {
    let mut out = Vec::new();
    if (0..4).any(|r| nu[r] < lambda[r]) {
        return out;
    }
    let total: i64 = mu.iter().sum();
    if nu.iter().sum::<i64>() - lambda.iter().sum::<i64>() != total {
        return out;
    }
    let mut rows: Vec<Vec<u8>> = Vec::new();
    fill_rows(0, nu, lambda, mu, &mut [0; 4], &mut rows, &mut out);
    out
}

fn fill_rows(
    r: usize,
    nu: [i64; 4],
    lambda: [i64; 4],
    mu: [i64; 4],
    used: &mut [i64; 4],
    rows: &mut Vec<Vec<u8>>,
    out: &mut Vec<LrTableau>,
) {
    if r == 4 {
        if *used == mu {
            out.push(LrTableau { outer: nu, inner: lambda, rows: rows.clone() });
        }
        return;
    }
    let len = (nu[r] - lambda[r]) as usize;
    let mut counts = [0usize; 4];
    choose_counts(0, len, &mut counts, &mut |c| {
        // Row entries in weakly increasing order.
        let row: Vec<u8> = (0..4).flat_map(|v| std::iter::repeat_n(v as u8 + 1, c[v])).collect();
        // Entries beyond the content.
        if (0..4).any(|v| used[v] + c[v] as i64 > mu[v]) {
            return;
        }
        // Column strictness against the row above.
        if r > 0 {
            for (k, &x) in row.iter().enumerate() {
                let col = lambda[r] + k as i64;
                if col >= lambda[r - 1] && col < nu[r - 1] {
                    let above = rows[r - 1][(col - lambda[r - 1]) as usize];
                    if above >= x {
                        return;
                    }
                }
            }
        }
        // Yamanouchi: read this row right to left after the rows above.
        let mut cnt = *used;
        for &x in row.iter().rev() {
            let v = (x - 1) as usize;
            cnt[v] += 1;
            if v > 0 && cnt[v] > cnt[v - 1] {
                return;
            }
        }
        let saved = *used;
        *used = cnt;
        rows.push(row);
        fill_rows(r + 1, nu, lambda, mu, used, rows, out);
        rows.pop();
        *used = saved;
    });
}

fn choose_counts(v: usize, left: usize, counts: &mut [usize; 4], f: &mut dyn FnMut(&[usize; 4])) {
    if v == 3 {
        counts[3] = left;
        f(counts);
        return;
    }
    for c in 0..=left {
        counts[v] = c;
        choose_counts(v + 1, left - c, counts, f);
    }
}

/// `lambda (x) mu` with normalized labels and multiplicities.
pub fn lr_decompose(lambda: HighestWeight, mu: HighestWeight) -> Decomposition {
    let l = lambda.normalize().0;
    let m = mu.normalize().0;
    let total: i64 = m.iter().sum();
    let mut out = Decomposition::new();
    // nu_r ranges over lambda_r ..= lambda_r + mu_1.
    let mut nu = [0i64; 4];
    enumerate_outer(0, &l, &m, total, &mut nu, &mut |nu| {
        let c = lr_tableaux(*nu, l, m).len() as u64;
        if c > 0 {
            *out.entry(HighestWeight(*nu).normalize()).or_insert(0) += c;
        }
    });
    out
}

fn enumerate_outer(r: usize, l: &[i64; 4], m: &[i64; 4], left: i64, nu: &mut [i64; 4], f: &mut dyn FnMut(&[i64; 4])) {
    if r == 4 {
        if left == 0 {
            f(nu);
        }
        return;
    }
    let hi = if r == 0 { l[0] + m[0] } else { (l[r] + m[0]).min(nu[r - 1]) };
    for x in l[r]..=hi {
        if x - l[r] > left {
            break;
        }
        nu[r] = x;
        enumerate_outer(r + 1, l, m, left - (x - l[r]), nu, f);
    }
}

pub fn decomposition_dim(d: &Decomposition) -> u64 {
    d.iter().map(|(w, c)| c * weyl_dim(*w)).sum()
}

/// `(a) + (b) + ...` in the order of the map.
pub fn format_decomposition(d: &Decomposition) -> String {
    let mut items: Vec<(HighestWeight, u64)> = d.iter().map(|(w, c)| (*w, *c)).collect();
    items.sort_by_key(|a| std::cmp::Reverse(a.0));
    items
        .iter()
        .map(|(w, c)| if *c == 1 { w.to_string() } else { format!("{c}{w}") })
        .collect::<Vec<_>>()
        .join(" \u{2295} ")
}

/// Gelfand-Tsetlin pattern; `rows[k-1]` is row `k` with `k` entries, and
/// `rows[3]` is the highest weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GtPattern {
    pub rows: [Vec<i64>; 4],
}

impl GtPattern {
    /// Entry `lambda^i_k` (both 1-based).
    pub fn entry(&self, i: usize, k: usize) -> i64 {
        self.rows[k - 1][i - 1]
    }

    /// gl(4) weight: row sums differences.
    pub fn weight(&self) -> [i64; 4] {
        let s: Vec<i64> = self.rows.iter().map(|r| r.iter().sum()).collect();
        [s[0], s[1] - s[0], s[2] - s[1], s[3] - s[2]]
    }
}

/// All patterns with top row `w`.
pub fn gt_patterns(w: HighestWeight) -> Vec<GtPattern> {
    let top = w.0.to_vec();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i64>> = vec![top];
    gt_rec(&mut stack, &mut out);
    out.sort();
    out
}

fn gt_rec(stack: &mut Vec<Vec<i64>>, out: &mut Vec<GtPattern>) {
    let last = stack.last().unwrap().clone();
    if last.len() == 1 {
        let rows: Vec<Vec<i64>> = stack.iter().rev().cloned().collect();
        out.push(GtPattern { rows: rows.try_into().expect("four rows") });
        return;
    }
    let n = last.len() - 1;
    let mut cur = vec![0i64; n];
    interlace(&last, 0, &mut cur, &mut |row| {
        stack.push(row.to_vec());
        gt_rec(stack, out);
        stack.pop();
    });
}

fn interlace(upper: &[i64], i: usize, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if i == cur.len() {
        f(cur);
        return;
    }
    for x in upper[i + 1]..=upper[i] {
        cur[i] = x;
        interlace(upper, i + 1, cur, f);
    }
}

/// Harmonic polynomials of degree `m` carry the label `(m, m, 0)`.
pub fn harmonic_label(m: i64) -> HighestWeight {
    HighestWeight([m, m, 0, 0])
}

/// Multiplicity of `mu` in `Pol_h (x) lambda`, using `Pol_h = sum_j H_{h-2j}`.
pub fn pol_multiplicity(lambda: HighestWeight, h: i64, mu: HighestWeight) -> u64 {
    let mu = mu.normalize();
    (0..=h / 2)
        .map(|j| lr_decompose(harmonic_label(h - 2 * j), lambda).get(&mu).copied().unwrap_or(0))
        .sum()
}

/// Label, multiplicity per degree `0..=max_degree`.
pub type Spectrum = BTreeMap<HighestWeight, Vec<u64>>;

/// All isotypic labels in `sum_{h <= max_degree} Pol_h (x) V`.
pub fn spectrum(values: &[HighestWeight], max_degree: i64) -> Spectrum {
    let mut out = Spectrum::new();
    let len = (max_degree + 1) as usize;
    for h in 0..=max_degree {
        for j in 0..=h / 2 {
            let harm = harmonic_label(h - 2 * j);
            for v in values {
                for (w, c) in lr_decompose(harm, *v) {
                    out.entry(w).or_insert_with(|| vec![0; len])[h as usize] += c;
                }
            }
        }
    }
    out
}

/// The six families of labels in the spectrum of V, as functions of `m >= 0`.
pub const FAMILIES: [(&str, [i64; 3]); 6] = [
    ("(m+3,m,0)", [3, 0, 0]),
    ("(m+3,m+1,1)", [3, 1, 1]),
    ("(m+3,m+2,2)", [3, 2, 2]),
    ("(m+3,m+3,3)", [3, 3, 3]),
    ("(m+1,m,0)", [1, 0, 0]),
    ("(m+1,m+1,1)", [1, 1, 1]),
];

/// Family index and `m` of a label `(m + a, m + b, c)`.
pub fn classify_family(w: HighestWeight) -> Option<(usize, i64)> {
    let l = w.normalize().0;
    FAMILIES.iter().enumerate().find_map(|(i, (_, base))| {
        let m = l[0] - base[0];
        (m >= 0 && l[1] == m + base[1] && l[2] == base[2]).then_some((i, m))
    })
}

/// The summands of V as highest weights.
pub fn value_labels() -> Vec<HighestWeight> {
    ValueShape::V.iter().map(|s| HighestWeight::of_shape(*s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw(s: &str) -> HighestWeight {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(HighestWeight([4, 1, 1, 1]).normalize(), HighestWeight([3, 0, 0, 0]));
        assert_eq!(hw("311").normalize(), hw("311"));
        assert_eq!(HighestWeight([0; 4]).normalize(), HighestWeight([0; 4]));
        assert!(HighestWeight::new([1, 2, 0, 0]).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(hw("3,1,1,0"), hw("311"));
        assert_eq!(hw("(311)"), hw("311"));
        assert_eq!(hw("10,3,0"), HighestWeight([10, 3, 0, 0]));
        assert!("31".parse::<HighestWeight>().is_err());
        assert!("abc".parse::<HighestWeight>().is_err());
        assert!("130".parse::<HighestWeight>().is_err());
        assert_eq!(HighestWeight([10, 3, 0, 0]).to_string(), "(10,3,0)");
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dim(hw("100")), 4);
        assert_eq!(weyl_dim(hw("110")), 6);
        assert_eq!(weyl_dim(hw("311")), 36);
        assert_eq!(weyl_dim(hw("410")), 84);
        assert_eq!(weyl_dim(hw("421")), 140);
        assert_eq!(weyl_dim(hw("300")) * 6, weyl_dim(hw("410")) + weyl_dim(hw("311")));
    }

    #[test]
    fn small_products() {
        let d = lr_decompose(hw("300"), hw("110"));
        assert_eq!(format_decomposition(&d), "(410) \u{2295} (311)");
        let d = lr_decompose(hw("100"), hw("110"));
        assert_eq!(d.keys().copied().collect::<Vec<_>>(), vec![hw("111"), hw("210")]);
    }

    #[test]
    fn gt_counts() {
        assert_eq!(gt_patterns(hw("100")).len(), 4);
        assert_eq!(gt_patterns(hw("110")).len(), 6);
        assert_eq!(gt_patterns(hw("000")).len(), 1);
    }

    #[test]
    fn duals() {
        assert_eq!(hw("311").dual(), hw("322"));
        assert_eq!(hw("300").dual(), hw("333"));
        assert_eq!(hw("210").dual(), hw("221"));
    }
}
