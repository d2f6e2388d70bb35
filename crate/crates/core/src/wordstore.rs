//! Bounded congruence closure over flat words.
//!
//! Words are interned (hash-consed) so union-find and adjacency work on
//! dense ids. Exploration is a breadth-first sweep from seed words: every
//! discovered word contributes its one-step rewrites up to the length
//! bound, merge edges are recorded with their step labels, and derivation
//! chains are recovered as shortest paths in the step graph.
//!
//! The rewrite-rule callback must be symmetric (every step has an inverse
//! step generated from the other endpoint); reductions, expansions and
//! letter swaps all are.

use crate::util::UnionFind;
use std::collections::HashMap;
use std::collections::VecDeque;

pub(crate) struct WordClosure<S> {
    words: Vec<Box<[u32]>>,
    index: HashMap<Box<[u32]>, u32>,
    adj: Vec<Vec<(u32, S)>>,
    uf: UnionFind,
}

impl<S: Clone> WordClosure<S> {
    pub fn explore(
        seeds: impl IntoIterator<Item = Vec<u32>>,
        max_len: usize,
        mut neighbors: impl FnMut(&[u32]) -> Vec<(Vec<u32>, S)>,
    ) -> Self {
        let mut store = WordClosure {
            words: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
            uf: UnionFind::new(0),
        };
        let mut queue = VecDeque::new();
        for seed in seeds {
            let (id, fresh) = store.intern(seed);
            if fresh {
                queue.push_back(id);
            }
        }
        while let Some(id) = queue.pop_front() {
            let word = store.words[id as usize].clone();
            for (next, step) in neighbors(&word) {
                if next.len() > max_len || next.is_empty() {
                    continue;
                }
                let (nid, fresh) = store.intern(next);
                if fresh {
                    queue.push_back(nid);
                }
                store.adj[id as usize].push((nid, step));
                store.uf.union(id as usize, nid as usize);
            }
        }
        store
    }

    fn intern(&mut self, word: Vec<u32>) -> (u32, bool) {
        let boxed: Box<[u32]> = word.into_boxed_slice();
        if let Some(&id) = self.index.get(&boxed) {
            return (id, false);
        }
        let id = self.words.len() as u32;
        self.words.push(boxed.clone());
        self.index.insert(boxed, id);
        self.adj.push(Vec::new());
        self.uf.push();
        (id, true)
    }

    pub fn id_of(&self, word: &[u32]) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn word(&self, id: u32) -> &[u32] {
        &self.words[id as usize]
    }

    pub fn same_class(&mut self, a: u32, b: u32) -> bool {
        self.uf.same(a as usize, b as usize)
    }

    /// Shortest derivation chain between two merged words, as
    /// `(word_before, step, word_after)` ids.
    pub fn path(&self, from: u32, to: u32) -> Option<Vec<(u32, S, u32)>> {
        if from == to {
            return Some(Vec::new());
        }
        let mut previous: Vec<Option<(u32, S)>> = vec![None; self.words.len()];
        let mut visited = vec![false; self.words.len()];
        let mut queue = VecDeque::new();
        visited[from as usize] = true;
        queue.push_back(from);
        'search: while let Some(id) = queue.pop_front() {
            for (next, step) in &self.adj[id as usize] {
                if !visited[*next as usize] {
                    visited[*next as usize] = true;
                    previous[*next as usize] = Some((id, step.clone()));
                    if *next == to {
                        break 'search;
                    }
                    queue.push_back(*next);
                }
            }
        }
        if !visited[to as usize] {
            return None;
        }
        let mut chain = Vec::new();
        let mut current = to;
        while current != from {
            let (prev, step) = previous[current as usize].clone().expect("visited");
            chain.push((prev, step, current));
            current = prev;
        }
        chain.reverse();
        Some(chain)
    }
}
