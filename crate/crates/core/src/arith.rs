//! Small integer helpers: divisor sums, divisors, Legendre symbol mod 3.

/// `σ_k(n)` for `n ≥ 1`, as exact integers.
pub fn sigma(n: u64, k: u32) -> num_bigint::BigInt {
    divisors(n)
        .into_iter()
        .map(|d| num_bigint::BigInt::from(d).pow(k))
        .sum()
}

/// Sum of the odd divisors of `n`.
pub fn sigma_odd(n: u64) -> u64 {
    divisors(n).into_iter().filter(|d| d % 2 == 1).sum()
}

/// Positive divisors in increasing order, by trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `(d/3)`.
pub fn legendre3(d: u64) -> i64 {
    match d % 3 {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_functions() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(sigma(6, 1), 12.into());
        assert_eq!(sigma(2, 3), 9.into());
        assert_eq!(sigma_odd(12), 4);
        assert_eq!(legendre3(5), -1);
    }
}
