//! Streaming consumers for enumerators.
//!
//! Enumerators hand each result to a [`Sink`] as soon as it is found. A sink
//! returns [`ControlFlow::Break`] to stop the enumeration early.

use std::ops::ControlFlow;

pub trait Sink<T: ?Sized> {
    fn accept(&mut self, item: &T) -> ControlFlow<()>;

    /// Running count of search nodes, reported just before each `accept` by
    /// enumerators that track it. Ignored by default.
    fn progress(&mut self, _nodes: u64) {}
}

impl<T: ?Sized, F> Sink<T> for F
where
    F: FnMut(&T) -> ControlFlow<()>,
{
    fn accept(&mut self, item: &T) -> ControlFlow<()> {
        self(item)
    }
}

/// Collects every item, never stopping early.
#[derive(Debug, Clone)]
pub struct Collect<T>(pub Vec<T>);

impl<T> Default for Collect<T> {
    fn default() -> Self {
        Collect(Vec::new())
    }
}

impl<T: Clone> Sink<T> for Collect<T> {
    fn accept(&mut self, item: &T) -> ControlFlow<()> {
        self.0.push(item.clone());
        ControlFlow::Continue(())
    }
}

/// Counts items and discards them.
#[derive(Debug, Clone, Copy, Default)]
pub struct Count(pub u64);

impl<T: ?Sized> Sink<T> for Count {
    fn accept(&mut self, _: &T) -> ControlFlow<()> {
        self.0 += 1;
        ControlFlow::Continue(())
    }
}
