use super::F2Error;

/// In-place Walsh-Hadamard transform: `out[f] = Σ_g (-1)^{f·g} in[g]`.
///
/// Unnormalized, so applying it twice multiplies by the length.
pub fn fwht(values: &mut [f64]) -> Result<(), F2Error> {
    let len = values.len();
    if !len.is_power_of_two() {
        return Err(F2Error::NotPowerOfTwo(len));
    }
    let mut h = 1;
    while h < len {
        for block in values.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        h *= 2;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_to_ones() {
        let mut v = vec![0.0; 8];
        v[0] = 1.0;
        fwht(&mut v).unwrap();
        assert!(v.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn uniform_to_delta() {
        let mut v = vec![0.0625; 16];
        fwht(&mut v).unwrap();
        assert_eq!(v[0], 1.0);
        assert!(v[1..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn rejects_bad_length() {
        assert!(matches!(fwht(&mut [0.0; 6]), Err(F2Error::NotPowerOfTwo(6))));
    }
}
