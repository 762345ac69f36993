use super::SearchError;
use crate::semantics::{satisfies, Conditions, Frame, FrameProperty, WorldSet};
use crate::syntax::System;

/// Largest frame size accepted by exhaustive enumeration.
pub const MAX_ENUMERATION_WORLDS: usize = 4;

/// Restricted growth strings of length `n`: `rgs[i]` is the block of world
/// `i`, and each block number first appears in increasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, n: usize, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=blocks {
            prefix.push(b);
            extend(prefix, n, blocks.max(b + 1), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        extend(&mut Vec::with_capacity(n), n, 0, &mut out);
    }
    out
}

/// The equivalence relation whose classes are the blocks of `rgs`.
pub(crate) fn equivalence_rows(rgs: &[usize]) -> Vec<WorldSet> {
    rgs.iter()
        .map(|&b| {
            rgs.iter()
                .enumerate()
                .filter(|(_, &c)| c == b)
                .fold(0, |acc, (w, _)| acc | 1 << w)
        })
        .collect()
}

/// Valid frames on worlds `0..size`, in a fixed order: partitions for `U` in
/// restricted-growth order, then measurement relations by increasing bit
/// pattern (bit `v * size + w` encodes `v M w`).
#[derive(Clone, Debug)]
pub struct FrameEnumeration {
    system: System,
    size: usize,
    conditions: Conditions,
    partitions: Vec<Vec<WorldSet>>,
    block: usize,
    allowed: u64,
    next: Option<u64>,
}

impl FrameEnumeration {
    fn start_block(&mut self) {
        let all_pairs = (1u64 << (self.size * self.size)) - 1;
        self.allowed = if self.conditions.contains(FrameProperty::MeasNotSubU) {
            // candidates outside U would be rejected anyway
            let u = &self.partitions[self.block];
            (0..self.size).fold(0, |acc, v| acc | u[v] << (v * self.size))
        } else {
            all_pairs
        };
        self.next = Some(0);
    }

    fn rows(&self, pattern: u64) -> Vec<WorldSet> {
        let row_mask = (1u64 << self.size) - 1;
        (0..self.size).map(|v| pattern >> (v * self.size) & row_mask).collect()
    }
}

impl Iterator for FrameEnumeration {
    type Item = Frame;

    fn next(&mut self) -> Option<Frame> {
        while self.block < self.partitions.len() {
            while let Some(pattern) = self.next {
                let succ = (pattern | !self.allowed).wrapping_add(1) & self.allowed;
                self.next = (succ != 0).then_some(succ);
                let meas = self.rows(pattern);
                let u = &self.partitions[self.block];
                if satisfies(u, &meas, self.conditions) {
                    return Some(Frame::from_rows(self.system, u.clone(), meas));
                }
            }
            self.block += 1;
            if self.block < self.partitions.len() {
                self.start_block();
            }
        }
        None
    }
}

/// Every valid frame of `system` on worlds `0..size`, each exactly once.
pub fn enumerate_frames(system: System, size: usize) -> Result<FrameEnumeration, SearchError> {
    enumerate_frames_with(system, size, Conditions::of(system))
}

/// Like [`enumerate_frames`], with an explicit choice of frame conditions.
pub fn enumerate_frames_with(
    system: System,
    size: usize,
    conditions: Conditions,
) -> Result<FrameEnumeration, SearchError> {
    check_bound(size)?;
    let mut it = FrameEnumeration {
        system,
        size,
        conditions,
        partitions: partitions(size).iter().map(|p| equivalence_rows(p)).collect(),
        block: 0,
        allowed: 0,
        next: None,
    };
    it.start_block();
    Ok(it)
}

pub(crate) fn check_bound(size: usize) -> Result<(), SearchError> {
    if size == 0 {
        Err(SearchError::EmptyBound)
    } else if size > MAX_ENUMERATION_WORLDS {
        Err(SearchError::BoundTooLarge {
            requested: size,
            max: MAX_ENUMERATION_WORLDS,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::validate_frame;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=5).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![0, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn one_world() {
        for system in [System::Msqr, System::Mspqr] {
            let frames: Vec<Frame> = enumerate_frames(system, 1).unwrap().collect();
            assert_eq!(frames.len(), 1);
            assert_eq!(frames[0].unitary_rows(), &[1]);
            assert_eq!(frames[0].meas_rows(), &[1]);
        }
    }

    #[test]
    fn discrete_partition_forces_loops() {
        let discrete: Vec<Frame> = enumerate_frames(System::Msqr, 2)
            .unwrap()
            .filter(|f| f.unitary_rows() == [0b01, 0b10])
            .collect();
        assert_eq!(discrete.len(), 1);
        assert_eq!(discrete[0].meas_rows(), &[0b01, 0b10]);
    }

    #[test]
    fn enumerated_frames_validate() {
        for system in [System::Msqr, System::Mspqr] {
            for size in 1..=3 {
                for f in enumerate_frames(system, size).unwrap() {
                    assert!(validate_frame(&f).is_empty(), "{f}");
                }
            }
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(
            enumerate_frames(System::Msqr, 5).unwrap_err(),
            SearchError::BoundTooLarge { requested: 5, max: 4 }
        );
        assert_eq!(enumerate_frames(System::Msqr, 0).unwrap_err(), SearchError::EmptyBound);
    }
}
