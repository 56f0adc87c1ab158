//! Shared reduced ordered multi-terminal BDDs with set-valued terminals.
//!
//! A [`Manager`] owns every node; a [`NodeRef`] is a plain handle into it.
//! Terminals carry interned sets of `u32` identifiers ([`LeafRef`]), the empty
//! set doubling as the bottom value. Handles are canonical: two roots of one
//! manager denote the same function iff they are equal.
//!
//! Variables come in three banks interleaved as `x1 < y1 < z1 < x2 < ...`.
//! Automata only use the `x` bank; transducers pair `x` (input) with `y`
//! (output), and `z` is scratch space for composition.
//!
//! Nodes are never freed. Managers are arena-like and dropped as a whole.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU32, Ordering};

use crate::alphabet::{SymbolAssignment, Ternary};
use crate::error::{Error, Result};

/// Position of a variable in the global order.
pub type Var = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bank {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Bank {
    pub const ALL: [Bank; 3] = [Bank::X, Bank::Y, Bank::Z];

    /// Global index of bit `bit` of this bank.
    pub fn var(self, bit: usize) -> Var {
        (bit * 3 + self as usize) as Var
    }

    pub fn of(var: Var) -> Bank {
        Bank::ALL[var as usize % 3]
    }

    pub fn bit(var: Var) -> usize {
        var as usize / 3
    }
}

/// Handle to an interned set of identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafRef(u32);

impl LeafRef {
    /// The empty set.
    pub const BOTTOM: LeafRef = LeafRef(0);

    pub fn is_bottom(self) -> bool {
        self == LeafRef::BOTTOM
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Pool of sets; equal sets share one handle.
#[derive(Debug, Clone)]
pub struct LeafPool {
    sets: Vec<Box<[u32]>>,
    index: HashMap<Box<[u32]>, LeafRef>,
}

impl Default for LeafPool {
    fn default() -> Self {
        let empty: Box<[u32]> = Box::new([]);
        let mut index = HashMap::new();
        index.insert(empty.clone(), LeafRef::BOTTOM);
        LeafPool {
            sets: vec![empty],
            index,
        }
    }
}

impl LeafPool {
    pub fn intern<I: IntoIterator<Item = u32>>(&mut self, values: I) -> LeafRef {
        let mut v: Vec<u32> = values.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        self.intern_sorted(v)
    }

    /// `values` must already be sorted and duplicate-free.
    pub fn intern_sorted(&mut self, values: Vec<u32>) -> LeafRef {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        if let Some(r) = self.index.get(values.as_slice()) {
            return *r;
        }
        let boxed = values.into_boxed_slice();
        let r = LeafRef(self.sets.len() as u32);
        self.sets.push(boxed.clone());
        self.index.insert(boxed, r);
        r
    }

    pub fn get(&self, leaf: LeafRef) -> &[u32] {
        &self.sets[leaf.index()]
    }

    pub fn contains(&self, leaf: LeafRef, value: u32) -> bool {
        self.get(leaf).binary_search(&value).is_ok()
    }

    pub fn union(&mut self, a: LeafRef, b: LeafRef) -> LeafRef {
        if a == b || b.is_bottom() {
            return a;
        }
        if a.is_bottom() {
            return b;
        }
        let (x, y) = (self.get(a), self.get(b));
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => {
                    out.push(x[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(y[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(x[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&x[i..]);
        out.extend_from_slice(&y[j..]);
        self.intern_sorted(out)
    }

    pub fn is_subset(&self, a: LeafRef, b: LeafRef) -> bool {
        let y = self.get(b);
        self.get(a).iter().all(|v| y.binary_search(v).is_ok())
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Handle to a diagram node, tagged with its manager.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRef {
    manager: u32,
    index: u32,
}

/// Read-only view of one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeView {
    Leaf(LeafRef),
    Inner { var: Var, low: NodeRef, high: NodeRef },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Leaf(LeafRef),
    Inner { var: Var, low: u32, high: u32 },
}

const NO_NODE: u32 = u32::MAX;

#[derive(Debug, Default, Clone)]
struct NodeStore {
    nodes: Vec<Node>,
    unique: HashMap<(Var, u32, u32), u32>,
    leaf_nodes: Vec<u32>,
}

impl NodeStore {
    fn leaf(&mut self, leaf: LeafRef) -> u32 {
        if self.leaf_nodes.len() <= leaf.index() {
            self.leaf_nodes.resize(leaf.index() + 1, NO_NODE);
        }
        let slot = &mut self.leaf_nodes[leaf.index()];
        if *slot == NO_NODE {
            *slot = self.nodes.len() as u32;
            self.nodes.push(Node::Leaf(leaf));
        }
        *slot
    }

    fn mk(&mut self, var: Var, low: u32, high: u32) -> u32 {
        if low == high {
            return low;
        }
        debug_assert!(self.top(low) > var && self.top(high) > var);
        let next = self.nodes.len() as u32;
        let idx = *self.unique.entry((var, low, high)).or_insert(next);
        if idx == next {
            self.nodes.push(Node::Inner { var, low, high });
        }
        idx
    }

    /// Variable of the node; terminals sort after every variable.
    fn top(&self, n: u32) -> Var {
        match self.nodes[n as usize] {
            Node::Leaf(_) => Var::MAX,
            Node::Inner { var, .. } => var,
        }
    }

    /// Cofactor of `n` with respect to `var`, assuming `var <= top(n)`.
    fn cofactor(&self, n: u32, var: Var, value: bool) -> u32 {
        match self.nodes[n as usize] {
            Node::Inner { var: v, low, high } if v == var => {
                if value {
                    high
                } else {
                    low
                }
            }
            _ => n,
        }
    }
}

/// Invocation counters, for instrumentation.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub apply_calls: u64,
    pub monadic_calls: u64,
}

static NEXT_MANAGER: AtomicU32 = AtomicU32::new(1);

/// Owner of the unique table and the leaf pool.
#[derive(Debug)]
pub struct Manager {
    id: u32,
    width: usize,
    store: NodeStore,
    leaves: LeafPool,
    stats: Stats,
}

impl Manager {
    /// Creates a manager whose banks are `width` bits wide each.
    pub fn new(width: usize) -> Self {
        let mut store = NodeStore::default();
        store.leaf(LeafRef::BOTTOM);
        Manager {
            id: NEXT_MANAGER.fetch_add(1, Ordering::Relaxed),
            width,
            store,
            leaves: LeafPool::default(),
            stats: Stats::default(),
        }
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    /// Number of nodes ever created.
    pub fn total_nodes(&self) -> usize {
        self.store.nodes.len()
    }

    pub fn leaves(&self) -> &LeafPool {
        &self.leaves
    }

    pub fn leaves_mut(&mut self) -> &mut LeafPool {
        &mut self.leaves
    }

    pub fn intern_leaf<I: IntoIterator<Item = u32>>(&mut self, values: I) -> LeafRef {
        self.leaves.intern(values)
    }

    pub fn leaf_set(&self, leaf: LeafRef) -> &[u32] {
        self.leaves.get(leaf)
    }

    fn handle(&self, index: u32) -> NodeRef {
        NodeRef {
            manager: self.id,
            index,
        }
    }

    fn check(&self, n: NodeRef) -> Result<u32> {
        if n.manager != self.id {
            return Err(Error::ForeignNode);
        }
        Ok(n.index)
    }

    /// The constant-bottom diagram.
    pub fn bottom(&self) -> NodeRef {
        self.handle(0)
    }

    pub fn is_bottom(&self, n: NodeRef) -> bool {
        n == self.bottom()
    }

    pub fn constant(&mut self, leaf: LeafRef) -> NodeRef {
        let idx = self.store.leaf(leaf);
        self.handle(idx)
    }

    pub fn view(&self, n: NodeRef) -> Result<NodeView> {
        let idx = self.check(n)?;
        Ok(match self.store.nodes[idx as usize] {
            Node::Leaf(l) => NodeView::Leaf(l),
            Node::Inner { var, low, high } => NodeView::Inner {
                var,
                low: self.handle(low),
                high: self.handle(high),
            },
        })
    }

    fn check_cube(&self, cube: &SymbolAssignment, banks: &[Bank]) -> Result<()> {
        let expected = self.width * banks.len();
        if cube.width() != expected {
            return Err(Error::WidthMismatch {
                expected,
                found: cube.width(),
            });
        }
        Ok(())
    }

    /// Cube position `j` addresses bit `j / banks.len()` of bank
    /// `banks[j % banks.len()]`.
    fn cube_literals(&self, cube: &SymbolAssignment, banks: &[Bank]) -> Vec<(Var, bool)> {
        let mut lits: Vec<(Var, bool)> = cube
            .values()
            .iter()
            .enumerate()
            .filter_map(|(j, t)| {
                let var = banks[j % banks.len()].var(j / banks.len());
                match t {
                    Ternary::Zero => Some((var, false)),
                    Ternary::One => Some((var, true)),
                    Ternary::Any => None,
                }
            })
            .collect();
        lits.sort_unstable();
        lits
    }

    /// Diagram mapping every assignment inside `cube` to `leaf` and all
    /// others to bottom.
    pub fn create_mtbdd(
        &mut self,
        cube: &SymbolAssignment,
        banks: &[Bank],
        leaf: LeafRef,
    ) -> Result<NodeRef> {
        self.check_cube(cube, banks)?;
        let lits = self.cube_literals(cube, banks);
        let mut n = self.store.leaf(leaf);
        for &(var, value) in lits.iter().rev() {
            n = if value {
                self.store.mk(var, 0, n)
            } else {
                self.store.mk(var, n, 0)
            };
        }
        Ok(self.handle(n))
    }

    /// Pointwise combination of two diagrams. `op` sees each distinct pair of
    /// terminals at most once per call and may carry state.
    pub fn apply<F>(&mut self, lhs: NodeRef, rhs: NodeRef, mut op: F) -> Result<NodeRef>
    where
        F: FnMut(&mut LeafPool, LeafRef, LeafRef) -> LeafRef,
    {
        let (l, r) = (self.check(lhs)?, self.check(rhs)?);
        self.stats.apply_calls += 1;
        let mut cache = HashMap::new();
        let out = apply_rec(
            &mut self.store,
            &mut self.leaves,
            &mut cache,
            &mut op,
            l,
            r,
        );
        Ok(self.handle(out))
    }

    /// Leafwise transformation of one diagram.
    pub fn monadic_apply<F>(&mut self, root: NodeRef, mut op: F) -> Result<NodeRef>
    where
        F: FnMut(&mut LeafPool, LeafRef) -> LeafRef,
    {
        let n = self.check(root)?;
        self.stats.monadic_calls += 1;
        let mut cache = HashMap::new();
        let out = monadic_rec(&mut self.store, &mut self.leaves, &mut cache, &mut op, n);
        Ok(self.handle(out))
    }

    pub fn union(&mut self, lhs: NodeRef, rhs: NodeRef) -> Result<NodeRef> {
        self.apply(lhs, rhs, |pool, a, b| pool.union(a, b))
    }

    /// Restricts `root` to the assignments inside `cube`; everything else
    /// becomes bottom.
    pub fn project(
        &mut self,
        root: NodeRef,
        cube: &SymbolAssignment,
        banks: &[Bank],
    ) -> Result<NodeRef> {
        self.check(root)?;
        // any non-empty marker works for the projection diagram
        let marker = self.leaves.intern([0]);
        let selector = self.create_mtbdd(cube, banks, marker)?;
        self.apply(root, selector, |_, value, keep| {
            if keep.is_bottom() {
                LeafRef::BOTTOM
            } else {
                value
            }
        })
    }

    /// Removes every variable of `bank`, uniting the sets that collide.
    pub fn trim_variables(&mut self, root: NodeRef, bank: Bank) -> Result<NodeRef> {
        let n = self.check(root)?;
        let mut memo = HashMap::new();
        let out = self.trim_rec(n, bank, &mut memo);
        Ok(self.handle(out))
    }

    fn trim_rec(&mut self, n: u32, bank: Bank, memo: &mut HashMap<u32, u32>) -> u32 {
        let Node::Inner { var, low, high } = self.store.nodes[n as usize] else {
            return n;
        };
        if let Some(r) = memo.get(&n) {
            return *r;
        }
        let lo = self.trim_rec(low, bank, memo);
        let hi = self.trim_rec(high, bank, memo);
        let out = if Bank::of(var) == bank {
            let (lo, hi) = (self.handle(lo), self.handle(hi));
            self.union(lo, hi).expect("own handles").index
        } else {
            self.store.mk(var, lo, hi)
        };
        memo.insert(n, out);
        out
    }

    /// Renames bit `i` of bank `from` to bit `i` of bank `to`. Fails when `to`
    /// already occurs in the diagram.
    pub fn rename_variables(&mut self, root: NodeRef, from: Bank, to: Bank) -> Result<NodeRef> {
        self.check(root)?;
        if from == to {
            return Ok(root);
        }
        if self.support(root)?.iter().any(|v| Bank::of(*v) == to) {
            return Err(Error::BankOccupied(to));
        }
        let mut memo = HashMap::new();
        let mut ite_memo = HashMap::new();
        let out = self.rename_rec(root.index, from, to, &mut memo, &mut ite_memo);
        Ok(self.handle(out))
    }

    fn rename_rec(
        &mut self,
        n: u32,
        from: Bank,
        to: Bank,
        memo: &mut HashMap<u32, u32>,
        ite_memo: &mut HashMap<(Var, u32, u32), u32>,
    ) -> u32 {
        let Node::Inner { var, low, high } = self.store.nodes[n as usize] else {
            return n;
        };
        if let Some(r) = memo.get(&n) {
            return *r;
        }
        let lo = self.rename_rec(low, from, to, memo, ite_memo);
        let hi = self.rename_rec(high, from, to, memo, ite_memo);
        let target = if Bank::of(var) == from {
            to.var(Bank::bit(var))
        } else {
            var
        };
        let out = self.select_rec(target, lo, hi, ite_memo);
        memo.insert(n, out);
        out
    }

    /// `if var then high else low`, where `var` may sit below the tops of
    /// `low` and `high` in the order.
    fn select_rec(
        &mut self,
        var: Var,
        low: u32,
        high: u32,
        memo: &mut HashMap<(Var, u32, u32), u32>,
    ) -> u32 {
        if low == high {
            return low;
        }
        let top = self.store.top(low).min(self.store.top(high));
        if var < top {
            return self.store.mk(var, low, high);
        }
        if var == top {
            let l = self.store.cofactor(low, var, false);
            let h = self.store.cofactor(high, var, true);
            return self.store.mk(var, l, h);
        }
        if let Some(r) = memo.get(&(var, low, high)) {
            return *r;
        }
        let l0 = self.store.cofactor(low, top, false);
        let h0 = self.store.cofactor(high, top, false);
        let l1 = self.store.cofactor(low, top, true);
        let h1 = self.store.cofactor(high, top, true);
        let lo = self.select_rec(var, l0, h0, memo);
        let hi = self.select_rec(var, l1, h1, memo);
        let out = self.store.mk(top, lo, hi);
        memo.insert((var, low, high), out);
        out
    }

    /// Value at a total assignment over `banks`.
    pub fn eval(
        &self,
        root: NodeRef,
        assignment: &SymbolAssignment,
        banks: &[Bank],
    ) -> Result<LeafRef> {
        self.check_cube(assignment, banks)?;
        if !assignment.is_total() {
            return Err(Error::PartialAssignment);
        }
        let lits = self.cube_literals(assignment, banks);
        let mut n = self.check(root)?;
        loop {
            match self.store.nodes[n as usize] {
                Node::Leaf(l) => return Ok(l),
                Node::Inner { var, low, high } => {
                    let Ok(pos) = lits.binary_search_by_key(&var, |(v, _)| *v) else {
                        return Err(Error::PartialAssignment);
                    };
                    n = if lits[pos].1 { high } else { low };
                }
            }
        }
    }

    /// Value at the assignment given by `value_of`.
    pub fn eval_with<F: Fn(Var) -> bool>(&self, root: NodeRef, value_of: F) -> Result<LeafRef> {
        let mut n = self.check(root)?;
        loop {
            match self.store.nodes[n as usize] {
                Node::Leaf(l) => return Ok(l),
                Node::Inner { var, low, high } => n = if value_of(var) { high } else { low },
            }
        }
    }

    /// Value at the x-bank codeword `code`.
    pub fn eval_code(&self, root: NodeRef, code: u64) -> Result<LeafRef> {
        let width = self.width;
        self.eval_with(root, |var| {
            let bit = Bank::bit(var);
            debug_assert_eq!(Bank::of(var), Bank::X);
            (code >> (width - 1 - bit)) & 1 == 1
        })
    }

    /// Variables occurring in the diagram.
    pub fn support(&self, root: NodeRef) -> Result<BTreeSet<Var>> {
        let mut out = BTreeSet::new();
        for n in self.reachable(&[root])? {
            if let Node::Inner { var, .. } = self.store.nodes[n as usize] {
                out.insert(var);
            }
        }
        Ok(out)
    }

    fn reachable(&self, roots: &[NodeRef]) -> Result<Vec<u32>> {
        let mut seen = std::collections::HashSet::new();
        let mut stack = Vec::new();
        for r in roots {
            stack.push(self.check(*r)?);
        }
        let mut order = Vec::new();
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            order.push(n);
            if let Node::Inner { low, high, .. } = self.store.nodes[n as usize] {
                stack.push(high);
                stack.push(low);
            }
        }
        Ok(order)
    }

    /// Distinct nodes (terminals included) reachable from the roots.
    pub fn node_count(&self, roots: &[NodeRef]) -> Result<usize> {
        Ok(self.reachable(roots)?.len())
    }

    /// Distinct terminals reachable from `root`, in first-visit order
    /// (low edges before high edges).
    pub fn leaves_of(&self, root: NodeRef) -> Result<Vec<LeafRef>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for n in self.reachable(&[root])? {
            if let Node::Leaf(l) = self.store.nodes[n as usize] {
                if seen.insert(l) {
                    out.push(l);
                }
            }
        }
        Ok(out)
    }

    /// Checks the reduction and ordering invariants on everything reachable
    /// from `roots`.
    pub fn is_well_formed(&self, roots: &[NodeRef]) -> Result<bool> {
        for n in self.reachable(roots)? {
            if let Node::Inner { var, low, high } = self.store.nodes[n as usize] {
                if low == high || self.store.top(low) <= var || self.store.top(high) <= var {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Graphviz rendering: circles for decisions (dashed edge = 0), boxes for
    /// terminals.
    pub fn to_dot(&self, roots: &[(String, NodeRef)]) -> Result<String> {
        let handles: Vec<NodeRef> = roots.iter().map(|(_, r)| *r).collect();
        let mut nodes = self.reachable(&handles)?;
        nodes.sort_unstable();
        let mut out = String::from("digraph mtbdd {\n");
        for n in &nodes {
            match self.store.nodes[*n as usize] {
                Node::Leaf(l) => {
                    let set: Vec<String> = self.leaves.get(l).iter().map(u32::to_string).collect();
                    let _ = writeln!(
                        out,
                        "  n{n} [shape=box, label=\"{{{}}}\"];",
                        set.join(",")
                    );
                }
                Node::Inner { var, low, high } => {
                    let _ = writeln!(out, "  n{n} [shape=circle, label=\"{var}\"];");
                    let _ = writeln!(out, "  n{n} -> n{low} [style=dashed];");
                    let _ = writeln!(out, "  n{n} -> n{high};");
                }
            }
        }
        for (i, (name, root)) in roots.iter().enumerate() {
            let _ = writeln!(
                out,
                "  r{i} [shape=plaintext, label=\"{}\"];",
                name.replace('"', "\\\"")
            );
            let _ = writeln!(out, "  r{i} -> n{};", root.index);
        }
        out.push_str("}\n");
        Ok(out)
    }
}

fn apply_rec<F>(
    store: &mut NodeStore,
    pool: &mut LeafPool,
    cache: &mut HashMap<(u32, u32), u32>,
    op: &mut F,
    l: u32,
    r: u32,
) -> u32
where
    F: FnMut(&mut LeafPool, LeafRef, LeafRef) -> LeafRef,
{
    if let Some(out) = cache.get(&(l, r)) {
        return *out;
    }
    let out = match (store.nodes[l as usize], store.nodes[r as usize]) {
        (Node::Leaf(a), Node::Leaf(b)) => {
            let leaf = op(pool, a, b);
            store.leaf(leaf)
        }
        _ => {
            let var = store.top(l).min(store.top(r));
            let (l0, l1) = (store.cofactor(l, var, false), store.cofactor(l, var, true));
            let (r0, r1) = (store.cofactor(r, var, false), store.cofactor(r, var, true));
            let lo = apply_rec(store, pool, cache, op, l0, r0);
            let hi = apply_rec(store, pool, cache, op, l1, r1);
            store.mk(var, lo, hi)
        }
    };
    cache.insert((l, r), out);
    out
}

fn monadic_rec<F>(
    store: &mut NodeStore,
    pool: &mut LeafPool,
    cache: &mut HashMap<u32, u32>,
    op: &mut F,
    n: u32,
) -> u32
where
    F: FnMut(&mut LeafPool, LeafRef) -> LeafRef,
{
    if let Some(out) = cache.get(&n) {
        return *out;
    }
    let out = match store.nodes[n as usize] {
        Node::Leaf(a) => {
            let leaf = op(pool, a);
            store.leaf(leaf)
        }
        Node::Inner { var, low, high } => {
            let lo = monadic_rec(store, pool, cache, op, low);
            let hi = monadic_rec(store, pool, cache, op, high);
            store.mk(var, lo, hi)
        }
    };
    cache.insert(n, out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(s: &str) -> SymbolAssignment {
        s.parse().unwrap()
    }

    fn set(m: &Manager, l: LeafRef) -> Vec<u32> {
        m.leaf_set(l).to_vec()
    }

    #[test]
    fn leaf_interning() {
        let mut m = Manager::new(2);
        assert_eq!(m.intern_leaf([]), LeafRef::BOTTOM);
        let a = m.intern_leaf([1, 2]);
        let b = m.intern_leaf([2, 1, 2]);
        assert_eq!(a, b);
        assert_ne!(m.intern_leaf([2]), a);
    }

    #[test]
    fn create_from_cube() {
        let mut m = Manager::new(2);
        let l = m.intern_leaf([1, 2]);
        let f = m.create_mtbdd(&cube("01"), &[Bank::X], l).unwrap();
        for (a, expect) in [("00", vec![]), ("01", vec![1, 2]), ("10", vec![]), ("11", vec![])] {
            let v = m.eval(f, &cube(a), &[Bank::X]).unwrap();
            assert_eq!(set(&m, v), expect, "at {a}");
        }

        let all = m.create_mtbdd(&cube("XX"), &[Bank::X], l).unwrap();
        assert_eq!(all, m.constant(l));
        assert_eq!(m.node_count(&[all]).unwrap(), 1);

        let q3 = m.intern_leaf([3]);
        let g = m.create_mtbdd(&cube("1X"), &[Bank::X], q3).unwrap();
        assert_eq!(m.eval(g, &cube("10"), &[Bank::X]).unwrap(), q3);
        assert_eq!(m.eval(g, &cube("11"), &[Bank::X]).unwrap(), q3);
        assert!(m.eval(g, &cube("01"), &[Bank::X]).unwrap().is_bottom());

        assert!(matches!(
            m.create_mtbdd(&cube("0"), &[Bank::X], l),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn apply_union_pointwise() {
        let mut m = Manager::new(2);
        let q12 = m.intern_leaf([1, 2]);
        let q2 = m.intern_leaf([2]);
        let b = m.create_mtbdd(&cube("01"), &[Bank::X], q12).unwrap();
        let c = m.create_mtbdd(&cube("10"), &[Bank::X], q2).unwrap();
        let f = m.union(b, c).unwrap();
        let g = m.create_mtbdd(&cube("01"), &[Bank::X], q2).unwrap();
        let h = m.union(f, g).unwrap();
        assert_eq!(h, f);
        let bottom = m.bottom();
        assert_eq!(m.union(f, bottom).unwrap(), f);
        assert_eq!(m.union(f, f).unwrap(), f);
    }

    #[test]
    fn functor_called_once_per_pair() {
        let mut m = Manager::new(3);
        let mut roots = Vec::new();
        for (i, c) in ["0X1", "1X0", "X11", "010"].iter().enumerate() {
            let l = m.intern_leaf([i as u32]);
            roots.push(m.create_mtbdd(&cube(c), &[Bank::X], l).unwrap());
        }
        let f = m.union(roots[0], roots[1]).unwrap();
        let g = m.union(roots[2], roots[3]).unwrap();
        let mut seen = Vec::new();
        m.apply(f, g, |pool, a, b| {
            seen.push((a, b));
            pool.union(a, b)
        })
        .unwrap();
        let mut dedup = seen.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(seen.len(), dedup.len());
    }

    #[test]
    fn monadic_cases() {
        let mut m = Manager::new(2);
        let q12 = m.intern_leaf([1, 2]);
        let f = m.create_mtbdd(&cube("01"), &[Bank::X], q12).unwrap();
        assert_eq!(m.monadic_apply(f, |_, l| l).unwrap(), f);

        let mut bag = Vec::new();
        m.monadic_apply(f, |_, l| {
            bag.push(l);
            l
        })
        .unwrap();
        bag.sort();
        assert_eq!(bag, vec![LeafRef::BOTTOM, q12]);

        let c = m.constant(q12);
        let out = m.monadic_apply(c, |_, _| LeafRef::BOTTOM).unwrap();
        assert_eq!(out, m.bottom());
    }

    #[test]
    fn projection() {
        let mut m = Manager::new(2);
        let q12 = m.intern_leaf([1, 2]);
        let q2 = m.intern_leaf([2]);
        let b = m.create_mtbdd(&cube("01"), &[Bank::X], q12).unwrap();
        let c = m.create_mtbdd(&cube("10"), &[Bank::X], q2).unwrap();
        let f = m.union(b, c).unwrap();
        assert_eq!(m.project(f, &cube("01"), &[Bank::X]).unwrap(), b);
        assert_eq!(m.project(f, &cube("XX"), &[Bank::X]).unwrap(), f);
        assert_eq!(m.project(f, &cube("11"), &[Bank::X]).unwrap(), m.bottom());
    }

    #[test]
    fn trim_collisions_unite() {
        let mut m = Manager::new(1);
        let a = m.intern_leaf([1]);
        let b = m.intern_leaf([2]);
        // pair cubes (x1, y1)
        let f = m.create_mtbdd(&cube("01"), &[Bank::X, Bank::Y], a).unwrap();
        let g = m.create_mtbdd(&cube("11"), &[Bank::X, Bank::Y], b).unwrap();
        let h = m.union(f, g).unwrap();
        let t = m.trim_variables(h, Bank::X).unwrap();
        let ab = m.intern_leaf([1, 2]);
        let expect = m.create_mtbdd(&cube("1"), &[Bank::Y], ab).unwrap();
        assert_eq!(t, expect);
        assert_eq!(m.trim_variables(t, Bank::X).unwrap(), t);
    }

    #[test]
    fn rename_banks() {
        let mut m = Manager::new(2);
        let l = m.intern_leaf([4]);
        let f = m.create_mtbdd(&cube("01"), &[Bank::Y], l).unwrap();
        let g = m.rename_variables(f, Bank::Y, Bank::X).unwrap();
        assert_eq!(g, m.create_mtbdd(&cube("01"), &[Bank::X], l).unwrap());
        assert_eq!(m.rename_variables(g, Bank::X, Bank::Y).unwrap(), f);
        assert_eq!(m.rename_variables(g, Bank::Z, Bank::Y).unwrap(), g);
        assert_eq!(
            m.rename_variables(g, Bank::Y, Bank::X),
            Err(Error::BankOccupied(Bank::X))
        );
    }

    #[test]
    fn rename_reorders_across_banks() {
        // z-bank variables moved below y-bank ones of the same bit
        let mut m = Manager::new(2);
        let l = m.intern_leaf([1]);
        let r = m.intern_leaf([2]);
        let f = m.create_mtbdd(&cube("0X1X"), &[Bank::Y, Bank::Z], l).unwrap();
        let g = m.create_mtbdd(&cube("X11X"), &[Bank::Y, Bank::Z], r).unwrap();
        let h = m.union(f, g).unwrap();
        let moved = m.rename_variables(h, Bank::Z, Bank::X).unwrap();
        for code in 0..16u64 {
            let yz = SymbolAssignment::from_code(code, 4);
            let v = m.eval(h, &yz, &[Bank::Y, Bank::Z]).unwrap();
            let w = m.eval(moved, &yz, &[Bank::Y, Bank::X]).unwrap();
            assert_eq!(v, w, "at {yz}");
        }
        assert!(m.is_well_formed(&[moved]).unwrap());
    }

    #[test]
    fn eval_errors() {
        let mut m = Manager::new(2);
        let l = m.intern_leaf([1]);
        let f = m.create_mtbdd(&cube("01"), &[Bank::X], l).unwrap();
        assert!(m.eval(m.bottom(), &cube("10"), &[Bank::X]).unwrap().is_bottom());
        assert_eq!(
            m.eval(f, &cube("0X"), &[Bank::X]),
            Err(Error::PartialAssignment)
        );
        let g = m.create_mtbdd(&cube("0101"), &[Bank::X, Bank::Y], l).unwrap();
        assert_eq!(
            m.eval(g, &cube("01"), &[Bank::X]),
            Err(Error::PartialAssignment)
        );
    }

    #[test]
    fn foreign_nodes_rejected() {
        let mut a = Manager::new(1);
        let b = Manager::new(1);
        let f = b.bottom();
        let g = a.bottom();
        assert_eq!(a.union(f, g), Err(Error::ForeignNode));
        assert_eq!(
            a.monadic_apply(f, |_, l| l),
            Err(Error::ForeignNode)
        );
    }

    #[test]
    fn zero_width() {
        let mut m = Manager::new(0);
        let l = m.intern_leaf([0]);
        let f = m.create_mtbdd(&cube(""), &[Bank::X], l).unwrap();
        assert_eq!(f, m.constant(l));
        assert_eq!(m.eval(f, &cube(""), &[Bank::X]).unwrap(), l);
        let bottom = m.bottom();
        assert_eq!(m.union(f, bottom).unwrap(), f);
        assert_eq!(m.trim_variables(f, Bank::X).unwrap(), f);
    }

    #[test]
    fn dot_dump() {
        let mut m = Manager::new(2);
        let l = m.intern_leaf([1, 2]);
        let f = m.create_mtbdd(&cube("01"), &[Bank::X], l).unwrap();
        let dot = m.to_dot(&[("()".to_string(), f)]).unwrap();
        assert!(dot.contains("shape=box, label=\"{1,2}\""));
        assert!(dot.contains("style=dashed"));
    }
}
