//! Kostka numbers `K_{λμ}`: semistandard tableaux of shape `λ` and content `μ`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::partition::Partition;

fn cache() -> &'static RwLock<HashMap<(Partition, Vec<u32>), u64>> {
    static CACHE: OnceLock<RwLock<HashMap<(Partition, Vec<u32>), u64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Number of SSYT of shape `shape` whose content is `content` (any
/// composition; trailing zeros are ignored).
pub fn kostka(shape: &Partition, content: &[u32]) -> u64 {
    let mut content = content.to_vec();
    while content.last() == Some(&0) {
        content.pop();
    }
    if shape.size() != content.iter().sum::<u32>() {
        return 0;
    }
    kostka_rec(shape, &content)
}

fn kostka_rec(shape: &Partition, content: &[u32]) -> u64 {
    let Some((&last, rest)) = content.split_last() else {
        return u64::from(shape.is_empty());
    };
    if shape.rows() > content.len() {
        return 0;
    }
    let key = (shape.clone(), content.to_vec());
    if let Some(&k) = cache().read().expect("kostka cache poisoned").get(&key) {
        return k;
    }
    // the largest entry occupies a horizontal strip of size `last`
    let mut total = 0;
    let mut inner = vec![0u32; shape.rows()];
    strips(shape, 0, last, &mut inner, &mut |rho| total += kostka_rec(rho, rest));
    cache().write().expect("kostka cache poisoned").insert(key, total);
    total
}

/// Enumerates `ρ ⊆ λ` with `λ/ρ` a horizontal strip of the given size.
fn strips(shape: &Partition, row: usize, remaining: u32, inner: &mut Vec<u32>, visit: &mut impl FnMut(&Partition)) {
    if row == shape.rows() {
        if remaining == 0 {
            let rho = Partition::from_unsorted(inner.clone());
            visit(&rho);
        }
        return;
    }
    let top = shape.part(row);
    let floor = shape.part(row + 1);
    for keep in (floor..=top).rev() {
        let removed = top - keep;
        if removed > remaining {
            break;
        }
        inner[row] = keep;
        strips(shape, row + 1, remaining - removed, inner, visit);
    }
    inner[row] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(kostka(&p(&[2]), &[1, 1]), 1);
        assert_eq!(kostka(&p(&[1, 1]), &[1, 1]), 1);
        assert_eq!(kostka(&p(&[1, 1]), &[2]), 0);
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(kostka(&p(&[3, 2]), &[2, 2, 1]), 2);
        assert_eq!(kostka(&p(&[]), &[]), 1);
        // content order does not matter
        assert_eq!(kostka(&p(&[3, 2]), &[1, 2, 2]), 2);
    }
}
