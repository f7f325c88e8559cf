//! Tensor products `F_lambda (x) H_m` as stated, for lambda in the value set.

/// Summands of `lambda (x) (m,m,0)` as normalized triples; `None` when no
/// statement covers the pair.
pub fn stated_products(lambda: [i64; 3], m: i64) -> Option<Vec<[i64; 3]>> {
    if m == 0 {
        return Some(vec![lambda]);
    }
    let v = match (lambda, m) {
        ([3, 0, 0], 1) => vec![[4, 1, 0], [3, 1, 1]],
        ([3, 0, 0], 2) => vec![[5, 2, 0], [4, 2, 1], [3, 2, 2]],
        ([3, 0, 0], _) => vec![[m + 3, m, 0], [m + 2, m, 1], [m + 1, m, 2], [m, m, 3]],
        ([3, 1, 1], 1) => vec![[4, 2, 1], [3, 2, 2], [2, 1, 0], [3, 0, 0]],
        ([3, 1, 1], 2) => vec![[5, 3, 1], [4, 3, 2], [3, 3, 3], [3, 2, 0], [2, 2, 1], [4, 1, 0], [3, 1, 1]],
        ([3, 1, 1], _) => vec![
            [m + 3, m + 1, 1],
            [m + 2, m + 1, 2],
            [m + 1, m + 1, 3],
            [m + 1, m, 0],
            [m, m, 1],
            [m + 2, m - 1, 0],
            [m + 1, m - 1, 1],
            [m, m - 1, 2],
        ],
        ([3, 2, 2], 1) => vec![[4, 3, 2], [3, 1, 1], [2, 2, 1], [3, 3, 3]],
        ([3, 2, 2], 2) => vec![[5, 4, 2], [4, 2, 1], [3, 0, 0], [3, 3, 1], [2, 1, 0], [4, 4, 3], [3, 2, 2]],
        ([3, 2, 2], _) => vec![
            [m + 3, m + 2, 2],
            [m + 2, m, 1],
            [m + 1, m - 2, 0],
            [m + 1, m + 1, 1],
            [m, m - 1, 0],
            [m + 2, m + 2, 3],
            [m + 1, m, 2],
            [m, m - 2, 1],
        ],
        ([3, 3, 3], 1) => vec![[4, 4, 3], [3, 2, 2]],
        ([3, 3, 3], 2) => vec![[5, 5, 3], [4, 3, 2], [3, 1, 1]],
        ([3, 3, 3], _) => vec![[m + 3, m + 3, 3], [m + 2, m + 1, 2], [m + 1, m - 1, 1], [m, m - 3, 0]],
        ([2, 1, 0], 1) => vec![[3, 2, 0], [3, 1, 1], [2, 2, 1], [1, 0, 0]],
        ([2, 1, 0], _) => vec![
            [m + 2, m + 1, 0],
            [m + 2, m, 1],
            [m + 1, m + 1, 1],
            [m + 1, m, 2],
            [m, m - 1, 0],
            [m - 1, m - 1, 1],
        ],
        // Dual of the (210) line; the last summand is (111), not (100).
        ([2, 2, 1], 1) => vec![[3, 3, 1], [3, 2, 2], [2, 1, 0], [1, 1, 1]],
        ([2, 2, 1], 2) => vec![[4, 4, 1], [4, 3, 2], [3, 2, 0], [3, 1, 1], [2, 2, 1], [1, 0, 0]],
        ([2, 2, 1], _) => vec![
            [m + 2, m + 2, 1],
            [m + 2, m + 1, 2],
            [m + 1, m, 0],
            [m + 1, m - 1, 1],
            [m, m, 1],
            [m - 1, m - 2, 0],
        ],
        ([1, 0, 0], _) => vec![[m + 1, m, 0], [m, m, 1]],
        ([1, 1, 1], _) => vec![[m + 1, m + 1, 1], [m, m - 1, 0]],
        _ => return None,
    };
    Some(v)
}
