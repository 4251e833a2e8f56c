//! Lazy, memoized, immutable streams, possibly-finite lazy lists and lazy
//! binary trees.
//!
//! Every value is a shared cell holding either a pending computation or its
//! cached result. Cells are forced at most once and are safe to force from
//! several threads; a losing thread waits for the winner's result. Forcing a
//! cell from inside its own computation is not supported and deadlocks.
//!
//! Long forced chains are released iteratively, so dropping a stream whose
//! first million cells were evaluated does not recurse a million frames.

use std::fmt;
use std::ops::Add;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;

type Thunk<V> = Box<dyn FnOnce() -> V + Send + 'static>;

/// A shared memo cell: pending computation plus cached value.
struct Memo<V> {
    value: OnceLock<V>,
    thunk: Mutex<Option<Thunk<V>>>,
}

impl<V> Memo<V> {
    fn deferred(f: impl FnOnce() -> V + Send + 'static) -> Self {
        Memo {
            value: OnceLock::new(),
            thunk: Mutex::new(Some(Box::new(f))),
        }
    }

    fn ready(v: V) -> Self {
        Memo {
            value: OnceLock::from(v),
            thunk: Mutex::new(None),
        }
    }

    fn force(&self) -> &V {
        self.value.get_or_init(|| {
            let f = self
                .thunk
                .lock()
                .unwrap_or_else(|e| e.into_inner())
                .take()
                .expect("lazy cell has no computation (an earlier evaluation panicked)");
            f()
        })
    }

    fn is_forced(&self) -> bool {
        self.value.get().is_some()
    }
}

/// Element bound shared by all lazy structures.
pub trait Elem: Clone + Send + Sync + 'static {}
impl<T: Clone + Send + Sync + 'static> Elem for T {}

// ---------------------------------------------------------------------------
// Stream

/// An infinite lazy stream. It is never empty: forcing always yields a head
/// and a tail.
pub struct Stream<T: Elem>(Arc<Memo<(T, Stream<T>)>>);

impl<T: Elem> Clone for Stream<T> {
    fn clone(&self) -> Self {
        Stream(Arc::clone(&self.0))
    }
}

impl<T: Elem> Drop for Stream<T> {
    fn drop(&mut self) {
        fn unlink<T: Elem>(s: &mut Stream<T>) -> Option<Stream<T>> {
            let memo = Arc::get_mut(&mut s.0)?;
            memo.value.take().map(|(_, tail)| tail)
        }
        let mut next = unlink(self);
        while let Some(mut s) = next {
            next = unlink(&mut s);
        }
    }
}

impl<T: Elem> Stream<T> {
    /// A stream whose first cell is computed on demand.
    pub fn lazy(f: impl FnOnce() -> (T, Stream<T>) + Send + 'static) -> Self {
        Stream(Arc::new(Memo::deferred(f)))
    }

    /// A cell with known head and tail.
    pub fn cons(head: T, tail: Stream<T>) -> Self {
        Stream(Arc::new(Memo::ready((head, tail))))
    }

    /// A cell with known head and a tail built on demand.
    pub fn cons_with(head: T, tail: impl FnOnce() -> Stream<T> + Send + 'static) -> Self {
        Stream::lazy(move || (head, tail()))
    }

    /// A stream that defers its whole construction until first forced.
    pub fn defer(f: impl FnOnce() -> Stream<T> + Send + 'static) -> Self {
        Stream::lazy(move || {
            let s = f();
            let (h, t) = s.force();
            (h.clone(), t.clone())
        })
    }

    /// Evaluates the first cell (once) and returns its contents.
    pub fn force(&self) -> (&T, &Stream<T>) {
        let (h, t) = self.0.force();
        (h, t)
    }

    pub fn head(&self) -> &T {
        self.force().0
    }

    pub fn tail(&self) -> Stream<T> {
        self.force().1.clone()
    }

    /// Whether the first cell has already been evaluated.
    pub fn is_forced(&self) -> bool {
        self.0.is_forced()
    }

    /// Whether two handles share the same cell.
    pub fn ptr_eq(&self, other: &Stream<T>) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Guarded corecursion: element `i` is the first component of `step`
    /// applied to the `i`-th state.
    pub fn unfold<S, F>(seed: S, step: F) -> Self
    where
        S: Send + 'static,
        F: Fn(S) -> (T, S) + Send + Sync + 'static,
    {
        unfold_shared(seed, Arc::new(step))
    }

    pub fn constant(x: T) -> Self {
        Stream::unfold((), move |()| (x.clone(), ()))
    }

    /// Element `i` is `f(i)`.
    pub fn from_fn(f: impl Fn(u64) -> T + Send + Sync + 'static) -> Self {
        Stream::unfold(0u64, move |i| (f(i), i + 1))
    }

    pub fn map<U: Elem>(&self, f: impl Fn(&T) -> U + Send + Sync + 'static) -> Stream<U> {
        map_shared(self.clone(), Arc::new(f))
    }

    /// Head-normalized copy: a new, already-forced cell with the same head
    /// and tail.
    pub fn decompose(&self) -> Self {
        let (h, t) = self.force();
        Stream::cons(h.clone(), t.clone())
    }

    /// The first `n` elements; forces exactly `n` cells.
    pub fn take(&self, n: usize) -> Vec<T> {
        self.iter().take(n).collect()
    }

    /// The stream after dropping `n` elements.
    pub fn skip(&self, n: usize) -> Stream<T> {
        let mut s = self.clone();
        for _ in 0..n {
            s = s.tail();
        }
        s
    }

    pub fn nth(&self, n: usize) -> T {
        self.skip(n).head().clone()
    }

    pub fn iter(&self) -> StreamIter<T> {
        StreamIter { next: self.clone() }
    }
}

fn unfold_shared<T, S, F>(seed: S, step: Arc<F>) -> Stream<T>
where
    T: Elem,
    S: Send + 'static,
    F: Fn(S) -> (T, S) + Send + Sync + 'static,
{
    Stream::lazy(move || {
        let (x, next) = step(seed);
        (x, unfold_shared(next, step))
    })
}

fn map_shared<T: Elem, U: Elem, F>(src: Stream<T>, f: Arc<F>) -> Stream<U>
where
    F: Fn(&T) -> U + Send + Sync + 'static,
{
    Stream::lazy(move || {
        let (h, t) = src.force();
        (f(h), map_shared(t.clone(), f))
    })
}

impl<T: Elem + fmt::Debug> fmt::Debug for Stream<T> {
    /// Shows only the already-evaluated prefix.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        let mut cur = self.clone();
        while cur.is_forced() {
            let next = {
                let (h, t) = cur.force();
                list.entry(h);
                t.clone()
            };
            cur = next;
        }
        list.finish_non_exhaustive()
    }
}

/// Iterator over a stream; never returns `None`.
pub struct StreamIter<T: Elem> {
    next: Stream<T>,
}

impl<T: Elem> Iterator for StreamIter<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        let (h, t) = {
            let (h, t) = self.next.force();
            (h.clone(), t.clone())
        };
        self.next = t;
        Some(h)
    }
}

// ---------------------------------------------------------------------------
// LazyList

/// A lazy list that may be finite (ends in `Nil`) or infinite.
type ListCell<T> = Option<(T, LazyList<T>)>;

pub struct LazyList<T: Elem>(Arc<Memo<ListCell<T>>>);

impl<T: Elem> Clone for LazyList<T> {
    fn clone(&self) -> Self {
        LazyList(Arc::clone(&self.0))
    }
}

impl<T: Elem> Drop for LazyList<T> {
    fn drop(&mut self) {
        fn unlink<T: Elem>(l: &mut LazyList<T>) -> Option<LazyList<T>> {
            let memo = Arc::get_mut(&mut l.0)?;
            memo.value.take().flatten().map(|(_, tail)| tail)
        }
        let mut next = unlink(self);
        while let Some(mut l) = next {
            next = unlink(&mut l);
        }
    }
}

impl<T: Elem> LazyList<T> {
    pub fn nil() -> Self {
        LazyList(Arc::new(Memo::ready(None)))
    }

    pub fn cons(head: T, tail: LazyList<T>) -> Self {
        LazyList(Arc::new(Memo::ready(Some((head, tail)))))
    }

    pub fn lazy(f: impl FnOnce() -> Option<(T, LazyList<T>)> + Send + 'static) -> Self {
        LazyList(Arc::new(Memo::deferred(f)))
    }

    /// Lazily walks a finite list; each cell is built when first forced.
    pub fn from_list(items: Vec<T>) -> Self {
        fn go<T: Elem>(items: Arc<Vec<T>>, i: usize) -> LazyList<T> {
            LazyList::lazy(move || {
                items
                    .get(i)
                    .cloned()
                    .map(|x| (x, go(Arc::clone(&items), i + 1)))
            })
        }
        go(Arc::new(items), 0)
    }

    /// An infinite lazy list with the elements of `s`.
    pub fn from_stream(s: &Stream<T>) -> Self {
        let s = s.clone();
        LazyList::lazy(move || {
            let (h, t) = s.force();
            Some((h.clone(), LazyList::from_stream(t)))
        })
    }

    pub fn unfold<S, F>(seed: S, step: F) -> Self
    where
        S: Send + 'static,
        F: Fn(S) -> Option<(T, S)> + Send + Sync + 'static,
    {
        fn go<T: Elem, S: Send + 'static, F>(seed: S, step: Arc<F>) -> LazyList<T>
        where
            F: Fn(S) -> Option<(T, S)> + Send + Sync + 'static,
        {
            LazyList::lazy(move || step(seed).map(|(x, next)| (x, go(next, step))))
        }
        go(seed, Arc::new(step))
    }

    pub fn force(&self) -> Option<(&T, &LazyList<T>)> {
        self.0.force().as_ref().map(|(h, t)| (h, t))
    }

    pub fn is_nil(&self) -> bool {
        self.force().is_none()
    }

    pub fn is_forced(&self) -> bool {
        self.0.is_forced()
    }

    pub fn map<U: Elem>(&self, f: impl Fn(&T) -> U + Send + Sync + 'static) -> LazyList<U> {
        fn go<T: Elem, U: Elem, F>(src: LazyList<T>, f: Arc<F>) -> LazyList<U>
        where
            F: Fn(&T) -> U + Send + Sync + 'static,
        {
            LazyList::lazy(move || src.force().map(|(h, t)| (f(h), go(t.clone(), f))))
        }
        go(self.clone(), Arc::new(f))
    }

    /// Head-normalized copy: `Nil` stays `Nil`, a cons cell is rebuilt
    /// already forced.
    pub fn decompose(&self) -> Self {
        match self.force() {
            None => LazyList::nil(),
            Some((h, t)) => LazyList::cons(h.clone(), t.clone()),
        }
    }

    /// Up to `n` leading elements (fewer if the list ends first).
    pub fn take(&self, n: usize) -> Vec<T> {
        self.iter().take(n).collect()
    }

    /// Forces the whole list. Diverges on infinite lists.
    pub fn to_vec(&self) -> Vec<T> {
        self.iter().collect()
    }

    pub fn iter(&self) -> LazyListIter<T> {
        LazyListIter {
            next: Some(self.clone()),
        }
    }
}

impl<T: Elem + fmt::Debug> fmt::Debug for LazyList<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        let mut cur = self.clone();
        loop {
            if !cur.is_forced() {
                return list.finish_non_exhaustive();
            }
            let next = match cur.force() {
                None => return list.finish(),
                Some((h, t)) => {
                    list.entry(h);
                    t.clone()
                }
            };
            cur = next;
        }
    }
}

pub struct LazyListIter<T: Elem> {
    next: Option<LazyList<T>>,
}

impl<T: Elem> Iterator for LazyListIter<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        let cur = self.next.take()?;
        let (h, t) = {
            let (h, t) = cur.force()?;
            (h.clone(), t.clone())
        };
        self.next = Some(t);
        Some(h)
    }
}

// ---------------------------------------------------------------------------
// Depth-bounded observational equality

/// Observational equality up to a finite number of destructor steps.
pub trait Bisimilar {
    /// True iff both sides agree on constructor shape and elements for the
    /// first `depth` levels.
    fn bisimilar_to_depth(&self, other: &Self, depth: usize) -> bool;
}

impl<T: Elem + PartialEq> Bisimilar for Stream<T> {
    fn bisimilar_to_depth(&self, other: &Self, depth: usize) -> bool {
        let (mut a, mut b) = (self.clone(), other.clone());
        for _ in 0..depth {
            if a.ptr_eq(&b) {
                return true;
            }
            let (na, nb) = {
                let ((ha, ta), (hb, tb)) = (a.force(), b.force());
                if ha != hb {
                    return false;
                }
                (ta.clone(), tb.clone())
            };
            a = na;
            b = nb;
        }
        true
    }
}

impl<T: Elem + PartialEq> Bisimilar for LazyList<T> {
    fn bisimilar_to_depth(&self, other: &Self, depth: usize) -> bool {
        let (mut a, mut b) = (self.clone(), other.clone());
        for _ in 0..depth {
            let (na, nb) = match (a.force(), b.force()) {
                (None, None) => return true,
                (Some((ha, ta)), Some((hb, tb))) if ha == hb => (ta.clone(), tb.clone()),
                _ => return false,
            };
            a = na;
            b = nb;
        }
        true
    }
}

pub fn bisimilar_to_depth<S: Bisimilar>(a: &S, b: &S, depth: usize) -> bool {
    a.bisimilar_to_depth(b, depth)
}

// ---------------------------------------------------------------------------
// LazyTree

/// A possibly-infinite lazy binary tree.
type TreeCell<T> = Option<(T, LazyTree<T>, LazyTree<T>)>;

pub struct LazyTree<T: Elem>(Arc<Memo<TreeCell<T>>>);

impl<T: Elem> Clone for LazyTree<T> {
    fn clone(&self) -> Self {
        LazyTree(Arc::clone(&self.0))
    }
}

impl<T: Elem> Drop for LazyTree<T> {
    fn drop(&mut self) {
        fn unlink<T: Elem>(t: &mut LazyTree<T>, out: &mut Vec<LazyTree<T>>) {
            if let Some(memo) = Arc::get_mut(&mut t.0) {
                if let Some(Some((_, l, r))) = memo.value.take() {
                    out.push(l);
                    out.push(r);
                }
            }
        }
        let mut pending = Vec::new();
        unlink(self, &mut pending);
        while let Some(mut t) = pending.pop() {
            unlink(&mut t, &mut pending);
        }
    }
}

/// A finite snapshot of a lazy tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreePrefix<T> {
    Leaf,
    /// Subtree below the requested depth; not evaluated.
    Cut,
    Node(T, Box<TreePrefix<T>>, Box<TreePrefix<T>>),
}

impl<T: Elem> LazyTree<T> {
    pub fn leaf() -> Self {
        LazyTree(Arc::new(Memo::ready(None)))
    }

    pub fn node(label: T, left: LazyTree<T>, right: LazyTree<T>) -> Self {
        LazyTree(Arc::new(Memo::ready(Some((label, left, right)))))
    }

    pub fn lazy(f: impl FnOnce() -> Option<(T, LazyTree<T>, LazyTree<T>)> + Send + 'static) -> Self {
        LazyTree(Arc::new(Memo::deferred(f)))
    }

    /// Builds the tree by expanding `seed`; `None` yields a leaf.
    pub fn unfold<S, F>(seed: S, step: F) -> Self
    where
        S: Send + 'static,
        F: Fn(S) -> Option<(T, S, S)> + Send + Sync + 'static,
    {
        fn go<T: Elem, S: Send + 'static, F>(seed: S, step: Arc<F>) -> LazyTree<T>
        where
            F: Fn(S) -> Option<(T, S, S)> + Send + Sync + 'static,
        {
            LazyTree::lazy(move || {
                step(seed).map(|(x, l, r)| (x, go(l, Arc::clone(&step)), go(r, step)))
            })
        }
        go(seed, Arc::new(step))
    }

    /// The infinite complete tree with every node labeled `label`.
    pub fn full(label: T) -> Self {
        LazyTree::unfold((), move |()| Some((label.clone(), (), ())))
    }

    pub fn force(&self) -> Option<(&T, &LazyTree<T>, &LazyTree<T>)> {
        self.0.force().as_ref().map(|(x, l, r)| (x, l, r))
    }

    /// Prunes at `depth`: nodes `depth` levels down become [`TreePrefix::Cut`]
    /// without being evaluated.
    pub fn take(&self, depth: usize) -> TreePrefix<T> {
        if depth == 0 {
            return TreePrefix::Cut;
        }
        match self.force() {
            None => TreePrefix::Leaf,
            Some((x, l, r)) => TreePrefix::Node(
                x.clone(),
                Box::new(l.take(depth - 1)),
                Box::new(r.take(depth - 1)),
            ),
        }
    }
}

// ---------------------------------------------------------------------------
// Fibonacci exercises

/// `a, b, a+b, ...`.
pub fn fib_stream(a: BigUint, b: BigUint) -> Stream<BigUint> {
    Stream::unfold((a, b), |(a, b)| {
        let next = &a + &b;
        (a, (b, next))
    })
}

/// Checks `x_i <= x_{i+1}` for the first `depth` adjacent pairs.
pub fn increasing_to_depth<T: Elem + PartialOrd>(s: &Stream<T>, depth: usize) -> bool {
    let prefix = s.take(depth + 1);
    prefix.windows(2).all(|w| w[0] <= w[1])
}

/// Checks `x_{i+2} = x_i + x_{i+1}` for the first `depth` consecutive triples.
pub fn local_fib_to_depth<T>(s: &Stream<T>, depth: usize) -> bool
where
    T: Elem + PartialEq,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    if depth == 0 {
        return true;
    }
    let prefix = s.take(depth + 2);
    prefix.windows(3).all(|w| &w[0] + &w[1] == w[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn cons_head_tail() {
        let s = Stream::cons(1, Stream::constant(1));
        assert_eq!(*s.head(), 1);
        let s = Stream::cons(0, Stream::constant(1));
        assert_eq!(*s.tail().head(), 1);
        let n = Stream::from_fn(|i| i);
        assert_eq!(*n.tail().tail().head(), 2);
    }

    #[test]
    fn forcing_tail_does_not_force_deeper() {
        let hits = Arc::new(AtomicUsize::new(0));
        let h = Arc::clone(&hits);
        let s = Stream::unfold(0u32, move |n| {
            h.fetch_add(1, Ordering::SeqCst);
            (n, n + 1)
        });
        let t = s.tail();
        assert_eq!(hits.load(Ordering::SeqCst), 1);
        assert!(!t.is_forced());
        let _ = s.take(5);
        let _ = s.take(5);
        assert_eq!(hits.load(Ordering::SeqCst), 5);
    }

    #[test]
    fn unfold_examples() {
        assert_eq!(Stream::unfold(0u32, |n| (n, n + 1)).take(4), vec![0, 1, 2, 3]);
        assert_eq!(Stream::unfold((), |()| (1, ())).take(3), vec![1, 1, 1]);
        let fib = Stream::unfold((1u64, 1u64), |(a, b)| (a, (b, a + b)));
        assert_eq!(fib.take(6), vec![1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn take_and_constant() {
        assert_eq!(Stream::constant(1).take(3), vec![1, 1, 1]);
        assert!(Stream::constant(1).take(0).is_empty());
        assert_eq!(Stream::constant(7).take(2), vec![7, 7]);
        let c = Stream::constant(5);
        assert!(c.bisimilar_to_depth(&c.tail(), 100));
    }

    #[test]
    fn map_examples() {
        assert_eq!(Stream::constant(1).map(|x| x + 1).take(3), vec![2, 2, 2]);
        let nil: LazyList<i32> = LazyList::nil();
        assert!(nil.map(|x| x * 2).is_nil());
        let l = LazyList::from_list((0..50).collect::<Vec<_>>());
        assert!(l.map(|x| *x).bisimilar_to_depth(&l, 1000));
    }

    #[test]
    fn map_is_lazy() {
        let hits = Arc::new(AtomicUsize::new(0));
        let h = Arc::clone(&hits);
        let src = Stream::unfold(0u32, move |n| {
            h.fetch_add(1, Ordering::SeqCst);
            (n, n + 1)
        });
        let m = src.map(|x| x * 10);
        assert_eq!(m.nth(3), 30);
        assert_eq!(hits.load(Ordering::SeqCst), 4);
    }

    #[test]
    fn from_list_examples() {
        let l = LazyList::from_list(vec![1, 2, 3]);
        assert_eq!(l.to_vec(), vec![1, 2, 3]);
        assert!(LazyList::<i32>::from_list(vec![]).is_nil());
        assert_eq!(LazyList::from_list((1..=17).collect()).to_vec().len(), 17);
    }

    #[test]
    fn decompose_examples() {
        let s = Stream::from_fn(|i| i * i);
        let d = s.decompose();
        assert!(d.is_forced());
        assert!(d.bisimilar_to_depth(&s, 500));
        assert!(LazyList::<u8>::nil().decompose().is_nil());
        assert_eq!(*Stream::constant(1).decompose().head(), 1);
    }

    #[test]
    fn bisimilar_examples() {
        let s = Stream::from_fn(|i| i % 3);
        assert!(bisimilar_to_depth(&s, &s, 50));
        assert!(!bisimilar_to_depth(
            &Stream::constant(1),
            &Stream::cons(2, Stream::constant(1)),
            1
        ));
        let a = LazyList::from_list(vec![1, 2]);
        let b = LazyList::from_list(vec![1, 2, 3]);
        assert!(!bisimilar_to_depth(&a, &b, 3));
        assert!(bisimilar_to_depth(&a, &b, 2));
        assert!(bisimilar_to_depth(&a, &a.clone(), 10));
    }

    #[test]
    fn fibonacci_exercises() {
        assert_eq!(
            fib_stream(1u32.into(), 1u32.into()).take(6),
            big(&[1, 1, 2, 3, 5, 8])
        );
        assert_eq!(
            fib_stream(0u32.into(), 1u32.into()).take(5),
            big(&[0, 1, 1, 2, 3])
        );
        assert_eq!(*fib_stream(9u32.into(), 4u32.into()).head(), BigUint::from(9u32));
        let f = fib_stream(1u32.into(), 1u32.into());
        assert!(increasing_to_depth(&f, 1000));
        assert!(local_fib_to_depth(&f, 1000));
        assert!(!local_fib_to_depth(&Stream::constant(1u64), 2));
        assert!(local_fib_to_depth(&Stream::constant(1u64), 0));
        assert!(!increasing_to_depth(&Stream::from_fn(|i| 10 - i as i64), 1));
    }

    #[test]
    fn tree_prefix() {
        assert_eq!(LazyTree::<i32>::leaf().take(5), TreePrefix::Leaf);
        let t = LazyTree::full(1);
        assert_eq!(t.take(0), TreePrefix::Cut);
        assert_eq!(
            t.take(1),
            TreePrefix::Node(1, Box::new(TreePrefix::Cut), Box::new(TreePrefix::Cut))
        );
        let small = LazyTree::node(3, LazyTree::leaf(), LazyTree::full(4));
        match small.take(3) {
            TreePrefix::Node(3, l, r) => {
                assert_eq!(*l, TreePrefix::Leaf);
                assert!(matches!(*r, TreePrefix::Node(4, _, _)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn deep_chains_drop_without_overflow() {
        let s = Stream::from_fn(|i| i);
        assert_eq!(s.nth(1_000_000), 1_000_000);
        drop(s);
        let l = LazyList::from_list((0..1_000_000u32).collect());
        assert_eq!(l.to_vec().len(), 1_000_000);
        drop(l);
    }

    #[test]
    fn concurrent_forcing_agrees() {
        let hits = Arc::new(AtomicUsize::new(0));
        let h = Arc::clone(&hits);
        let s = Stream::unfold(0u64, move |n| {
            h.fetch_add(1, Ordering::SeqCst);
            (n * 3, n + 1)
        });
        let results: Vec<Vec<u64>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..8)
                .map(|_| {
                    let s = s.clone();
                    scope.spawn(move || s.take(500))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(results.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(hits.load(Ordering::SeqCst), 500);
    }
}
