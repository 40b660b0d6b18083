use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::symgroup::{all_perms, length, reduced_word, Perm};

/// Per-degree lookup tables for `S_k`, built once and shared.
#[derive(Debug)]
pub struct HeckeTables {
    pub k: usize,
    /// All permutations in lexicographic order; elements are indexed by position.
    pub perms: Vec<Perm>,
    pub index: HashMap<Perm, u32>,
    pub lengths: Vec<usize>,
    pub words: Vec<Vec<usize>>,
    pub inverse: Vec<u32>,
    /// `left[i-1][w]` is the index of `s_i w`.
    pub left: Vec<Vec<u32>>,
    /// `right[i-1][w]` is the index of `w s_i`.
    pub right: Vec<Vec<u32>>,
}

static CACHE: Lazy<Mutex<HashMap<usize, Arc<HeckeTables>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl HeckeTables {
    pub fn get(k: usize) -> Arc<HeckeTables> {
        let mut cache = CACHE.lock().unwrap();
        cache.entry(k).or_insert_with(|| Arc::new(Self::build(k))).clone()
    }

    fn build(k: usize) -> HeckeTables {
        let perms = all_perms(k);
        let index: HashMap<Perm, u32> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let lengths = perms.iter().map(length).collect();
        let words = perms.iter().map(|p| reduced_word(p).letters).collect();
        let inverse = perms.iter().map(|p| index[&p.inverse()]).collect();
        let left = (1..k).map(|i| perms.iter().map(|p| index[&p.simple_mul(i)]).collect()).collect();
        let right = (1..k).map(|i| perms.iter().map(|p| index[&p.mul_simple(i)]).collect()).collect();
        HeckeTables { k, perms, index, lengths, words, inverse, left, right }
    }

    pub fn size(&self) -> usize {
        self.perms.len()
    }

    pub fn idx(&self, p: &Perm) -> u32 {
        self.index[p]
    }

    pub fn identity(&self) -> u32 {
        0
    }
}
