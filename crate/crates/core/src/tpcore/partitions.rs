use std::fmt;

use crate::error::{Error, Result};

/// A partition of `{0, ..., r-1}` into nonempty blocks, each block sorted and
/// blocks ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The block holding element 0, i.e. the first block.
    pub fn first_block(&self) -> &[usize] {
        &self.blocks[0]
    }
}

impl fmt::Display for SetPartition {
    /// One-based, e.g. `{{1},{2,3}}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let v: Vec<String> = b.iter().map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", v.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `Bell(r)` partitions of an `r`-element set, via restricted growth strings.
pub fn set_partitions(r: usize) -> Result<Vec<SetPartition>> {
    if r < 1 {
        return Err(Error::InvalidModel("set partitions need r >= 1".into()));
    }
    let mut out = Vec::new();
    // labels[i] <= 1 + max(labels[..i])
    let mut labels = vec![0usize; r];
    loop {
        let nblocks = labels.iter().max().unwrap() + 1;
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, l) in labels.iter().enumerate() {
            blocks[*l].push(i);
        }
        out.push(SetPartition { blocks });

        let mut i = r - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            let prefix_max = labels[..i].iter().max().copied().unwrap_or(0);
            if labels[i] <= prefix_max {
                labels[i] += 1;
                for l in labels.iter_mut().skip(i + 1) {
                    *l = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Independent count: canonicalize every map {0..r} -> {0..r}.
    fn brute_force_count(r: usize) -> usize {
        let mut seen = BTreeSet::new();
        let total = r.pow(r as u32);
        for mut code in 0..total {
            let mut f = vec![0; r];
            for slot in f.iter_mut() {
                *slot = code % r;
                code /= r;
            }
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            for v in 0..r {
                let b: Vec<usize> = (0..r).filter(|i| f[*i] == v).collect();
                if !b.is_empty() {
                    blocks.push(b);
                }
            }
            blocks.sort();
            seen.insert(blocks);
        }
        seen.len()
    }

    #[test]
    fn bell_counts() {
        assert_eq!(set_partitions(2).unwrap().len(), 2);
        assert_eq!(set_partitions(3).unwrap().len(), 5);
        assert_eq!(set_partitions(4).unwrap().len(), 15);
        for r in 1..=6 {
            assert_eq!(
                set_partitions(r).unwrap().len(),
                brute_force_count(r),
                "r={r}"
            );
        }
        assert!(set_partitions(0).is_err());
    }

    #[test]
    fn structure() {
        for r in 1..=5 {
            let ps = set_partitions(r).unwrap();
            let distinct: BTreeSet<String> = ps.iter().map(|p| p.to_string()).collect();
            assert_eq!(distinct.len(), ps.len());
            for p in &ps {
                let mut all: Vec<usize> = p.blocks().concat();
                all.sort();
                assert_eq!(all, (0..r).collect::<Vec<_>>());
                assert!(p.first_block().contains(&0));
                assert!(p.blocks().windows(2).all(|w| w[0][0] < w[1][0]));
            }
        }
        let three: Vec<String> = set_partitions(3)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(
            three,
            [
                "{{1,2,3}}",
                "{{1,2},{3}}",
                "{{1,3},{2}}",
                "{{1},{2,3}}",
                "{{1},{2},{3}}"
            ]
        );
    }
}
