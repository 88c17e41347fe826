use crate::graph::VertexId;
use crate::numeric::ceil_log2;

/// One terminal's fractional coverage and its weight relative to the
/// lightest terminal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BucketEntry {
    pub vertex: VertexId,
    pub y: f64,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BucketSelection {
    /// Bucket `i` holds terminals with `2^-(i+1) < y <= 2^-i`.
    pub index: u32,
    pub terminals: Vec<VertexId>,
    /// Weighted coverage `sum weight * y` of the chosen bucket.
    pub mass: f64,
    /// Number of buckets considered, `max(1, 2 ceil(log2 l))`.
    pub bucket_count: u32,
    /// Whether `mass >= 1 / bucket_count`.
    pub guarantee_met: bool,
}

const SNAP: f64 = 1e-9;

fn bucket_of(y: f64) -> Option<u32> {
    if y <= 0.0 {
        return None;
    }
    let exact = -y.log2();
    let rounded = exact.round();
    if rounded >= 0.0 && (y - (-rounded).exp2()).abs() <= SNAP {
        return Some(rounded as u32);
    }
    if exact < 0.0 {
        return Some(0);
    }
    Some(exact.floor() as u32)
}

/// Groups terminals by coverage and returns the bucket with the largest
/// weighted coverage; ties go to the smaller index. `ell` is the number of
/// terminals in the instance, or their total weight in units of the lightest
/// one when weights differ.
pub fn bucket_select(entries: &[BucketEntry], ell: usize) -> BucketSelection {
    let bucket_count = (2 * ceil_log2(ell.max(1) as u64)).max(1);
    let mut mass = vec![0.0f64; bucket_count as usize];
    let mut members: Vec<Vec<VertexId>> = vec![Vec::new(); bucket_count as usize];
    for e in entries {
        if let Some(i) = bucket_of(e.y) {
            if i < bucket_count {
                mass[i as usize] += e.weight * e.y;
                members[i as usize].push(e.vertex);
            }
        }
    }
    let mut index = 0usize;
    for i in 1..bucket_count as usize {
        if mass[i] > mass[index] + 1e-12 {
            index = i;
        }
    }
    let mut terminals = std::mem::take(&mut members[index]);
    terminals.sort_unstable();
    BucketSelection {
        index: index as u32,
        terminals,
        mass: mass[index],
        bucket_count,
        guarantee_met: mass[index] + 1e-9 >= 1.0 / bucket_count as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entries(ys: &[f64]) -> Vec<BucketEntry> {
        ys.iter().enumerate().map(|(i, &y)| BucketEntry { vertex: i, y, weight: 1.0 }).collect()
    }

    #[test]
    fn bucket_boundaries() {
        assert_eq!(bucket_of(1.0), Some(0));
        assert_eq!(bucket_of(0.75), Some(0));
        assert_eq!(bucket_of(0.5), Some(1));
        assert_eq!(bucket_of(0.5 + 1e-12), Some(1));
        assert_eq!(bucket_of(0.3), Some(1));
        assert_eq!(bucket_of(0.25), Some(2));
        assert_eq!(bucket_of(0.0), None);
    }

    #[test]
    fn two_halves_share_a_bucket() {
        let s = bucket_select(&entries(&[0.5, 0.5]), 2);
        assert_eq!(s.terminals, vec![0, 1]);
        assert!((s.mass - 1.0).abs() < 1e-12);
        assert!(s.guarantee_met);
    }

    #[test]
    fn heaviest_bucket_wins() {
        let s = bucket_select(&entries(&[0.4, 0.3, 0.2, 0.1]), 4);
        assert_eq!(s.terminals, vec![0, 1]);
        assert!((s.mass - 0.7).abs() < 1e-12);
        assert_eq!(s.bucket_count, 4);
    }
}
