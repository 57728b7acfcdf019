/// Rank over GF(2) of a matrix given as column bitsets over `rows` rows.
pub fn gf2_rank(mut columns: Vec<Vec<u64>>, rows: usize) -> usize {
    let mut pivots: Vec<Option<usize>> = vec![None; rows];
    let mut rank = 0;
    for j in 0..columns.len() {
        while let Some(low) = lowest_bit(&columns[j]) {
            match pivots[low] {
                Some(p) => {
                    let (a, b) = columns.split_at_mut(j);
                    for (x, y) in b[0].iter_mut().zip(&a[p]) {
                        *x ^= *y;
                    }
                }
                None => {
                    pivots[low] = Some(j);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn lowest_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}
