//! Canonical argument order for super skew-symmetric cochains.
//!
//! Swapping adjacent arguments `x, y` multiplies a cochain by
//! `−(−1)^{p(x)p(y)}`: odd arguments commute, everything else anticommutes.
//! The canonical form lists even arguments first in strictly ascending
//! order, then odd arguments in non-decreasing order.

/// Sign of transposing two adjacent arguments of the given parities.
pub fn swap_sign(px: u8, py: u8) -> i32 {
    if px == 1 && py == 1 {
        1
    } else {
        -1
    }
}

/// Sorts `items` into canonical order and returns the accumulated sign,
/// or `0` when an even argument repeats.
///
/// `parity` reports `1` for odd arguments. Items of equal parity are
/// compared with `Ord`.
pub fn canonicalize_by<T: Ord>(items: &mut [T], parity: impl Fn(&T) -> u8) -> i32 {
    let mut sign = 1;
    // insertion sort; tuples are short
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 {
            let (pa, pb) = (parity(&items[j - 1]), parity(&items[j]));
            let order = pa.cmp(&pb).then_with(|| items[j - 1].cmp(&items[j]));
            match order {
                std::cmp::Ordering::Greater => {
                    sign *= swap_sign(pa, pb);
                    items.swap(j - 1, j);
                    j -= 1;
                }
                std::cmp::Ordering::Equal => {
                    if pa == 0 {
                        return 0;
                    }
                    break;
                }
                std::cmp::Ordering::Less => break,
            }
        }
    }
    sign
}

/// Canonicalizes a tuple of basis ids.
pub fn canonicalize(ids: &mut [u32], parities: &[u8]) -> i32 {
    canonicalize_by(ids, |&id| parities[id as usize])
}

/// Whether a tuple is already canonical.
pub fn is_canonical(ids: &[u32], parities: &[u8]) -> bool {
    ids.windows(2).all(|w| {
        let (pa, pb) = (parities[w[0] as usize], parities[w[1] as usize]);
        match pa.cmp(&pb) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => {
                if pa == 0 {
                    w[0] < w[1]
                } else {
                    w[0] <= w[1]
                }
            }
        }
    })
}

/// Sign of moving the entries at `positions` (ascending) to the front while
/// keeping their relative order and that of the rest.
pub fn extraction_sign(parities: &[u8], positions: &[usize]) -> i32 {
    let mut sign = 1;
    let mut chosen = positions.iter().peekable();
    let mut passed: Vec<u8> = Vec::new();
    for (pos, &p) in parities.iter().enumerate() {
        if chosen.peek() == Some(&&pos) {
            chosen.next();
            for &q in &passed {
                sign *= swap_sign(q, p);
            }
        } else {
            passed.push(p);
        }
    }
    sign
}
