//! Hash set of fixed-length byte strings kept in one contiguous arena, so
//! millions of entries cost two allocations rather than one each.

use std::hash::{BuildHasher, RandomState};

use hashbrown::HashTable;

#[derive(Debug, Default)]
pub(crate) struct StateSet {
    key_len: usize,
    keys: Vec<u8>,
    table: HashTable<u32>,
    hasher: RandomState,
}

impl StateSet {
    pub(crate) fn new(key_len: usize) -> Self {
        Self {
            key_len,
            ..Self::default()
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.table.len()
    }

    fn key(keys: &[u8], key_len: usize, entry: u32) -> &[u8] {
        let start = entry as usize * key_len;
        &keys[start..start + key_len]
    }

    pub(crate) fn contains(&self, key: &[u8]) -> bool {
        debug_assert_eq!(key.len(), self.key_len);
        let hash = self.hasher.hash_one(key);
        self.table
            .find(hash, |&e| Self::key(&self.keys, self.key_len, e) == key)
            .is_some()
    }

    /// Returns false if the key was already present.
    pub(crate) fn insert(&mut self, key: &[u8]) -> bool {
        debug_assert_eq!(key.len(), self.key_len);
        let (keys, key_len, hasher) = (&self.keys, self.key_len, &self.hasher);
        let hash = hasher.hash_one(key);
        let entry = self.table.entry(
            hash,
            |&e| Self::key(keys, key_len, e) == key,
            |&e| hasher.hash_one(Self::key(keys, key_len, e)),
        );
        match entry {
            hashbrown::hash_table::Entry::Occupied(_) => false,
            hashbrown::hash_table::Entry::Vacant(slot) => {
                slot.insert((keys.len() / key_len.max(1)) as u32);
                self.keys.extend_from_slice(key);
                true
            }
        }
    }
}
