//! Bounded distinguished-point storage.

use xxhash_rust::xxh3::xxh3_64_with_seed;

use crate::walk::{Point, TrailTriple};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InsertResult {
    Inserted,
    /// Same end point and same start as the resident triple.
    DuplicateStart,
    /// Same end point, different start; the resident stays in place.
    CandidatePair(TrailTriple),
}

/// Direct-mapped table of trail triples keyed by end point. A new triple
/// whose slot is held by a different end point overwrites it.
pub struct DpStore {
    slots: Vec<Option<TrailTriple>>,
    occupied: usize,
    evictions: u64,
    key: u64,
}

impl DpStore {
    pub fn new(capacity: usize, key: u64) -> Self {
        DpStore {
            slots: vec![None; capacity.max(1)],
            occupied: 0,
            evictions: 0,
            key,
        }
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    pub fn len(&self) -> usize {
        self.occupied
    }

    pub fn is_empty(&self) -> bool {
        self.occupied == 0
    }

    pub fn evictions(&self) -> u64 {
        self.evictions
    }

    fn slot(&self, end: &Point) -> usize {
        let mut buf = [0u8; 17];
        buf[..16].copy_from_slice(&end.x.to_le_bytes());
        buf[16] = end.side as u8;
        (xxh3_64_with_seed(&buf, self.key) % self.slots.len() as u64) as usize
    }

    pub fn get(&self, end: &Point) -> Option<&TrailTriple> {
        self.slots[self.slot(end)]
            .as_ref()
            .filter(|t| t.end == *end)
    }

    pub fn insert(&mut self, triple: TrailTriple) -> InsertResult {
        let i = self.slot(&triple.end);
        match &self.slots[i] {
            Some(resident) if resident.end == triple.end => {
                if resident.start == triple.start {
                    InsertResult::DuplicateStart
                } else {
                    InsertResult::CandidatePair(*resident)
                }
            }
            Some(_) => {
                self.evictions += 1;
                self.slots[i] = Some(triple);
                InsertResult::Inserted
            }
            None => {
                self.occupied += 1;
                self.slots[i] = Some(triple);
                InsertResult::Inserted
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::Side;

    fn triple(start: u128, end: u128) -> TrailTriple {
        TrailTriple {
            start: Point::new(start, Side::V),
            end: Point::new(end, Side::W),
            length: 3,
        }
    }

    #[test]
    fn insertion_cases() {
        let mut s = DpStore::new(64, 7);
        assert_eq!(s.insert(triple(1, 10)), InsertResult::Inserted);
        assert_eq!(s.insert(triple(1, 10)), InsertResult::DuplicateStart);
        assert_eq!(
            s.insert(triple(2, 10)),
            InsertResult::CandidatePair(triple(1, 10))
        );
        assert_eq!(s.get(&Point::new(10, Side::W)), Some(&triple(1, 10)));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn never_exceeds_capacity() {
        let mut s = DpStore::new(16, 3);
        for e in 0..1000 {
            s.insert(triple(e, e));
            assert!(s.len() <= 16);
        }
        assert!(s.evictions() > 0);
    }
}
