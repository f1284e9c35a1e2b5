use num_bigint::BigUint;
use num_traits::One;

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `ln(n!)` as a compensated sum of logarithms.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n)
        .map(|m| (m as f64).ln())
        .collect::<CompensatedSum>()
        .value()
}

/// Product of small factors, batched through `u64` before touching the big integer.
pub fn product<I: IntoIterator<Item = usize>>(factors: I) -> BigUint {
    let mut acc = BigUint::one();
    let mut chunk: u64 = 1;
    for f in factors {
        let f = f as u64;
        match chunk.checked_mul(f) {
            Some(c) => chunk = c,
            None => {
                acc *= chunk;
                chunk = f;
            }
        }
    }
    acc * chunk
}

pub fn factorial(n: usize) -> BigUint {
    product(2..=n)
}

/// Natural log of a big integer, accurate to double precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        // exact enough: to_f64 rounds correctly below the overflow threshold
        return num_traits::ToPrimitive::to_f64(x).map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    let top = num_traits::ToPrimitive::to_f64(&top).unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
        assert!((ln_factorial(10) - 3_628_800f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn big_logs() {
        let x = factorial(400);
        let direct = ln_factorial(400);
        assert!((ln_biguint(&x) - direct).abs() < 1e-9 * direct);
        assert_eq!(ln_biguint(&BigUint::one()), 0.0);
    }

    #[test]
    fn compensation_helps() {
        let mut acc = CompensatedSum::new();
        acc.add(1e16);
        for _ in 0..1000 {
            acc.add(1.0);
        }
        acc.add(-1e16);
        assert_eq!(acc.value(), 1000.0);
    }
}
