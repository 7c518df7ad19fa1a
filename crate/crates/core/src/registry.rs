//! Name-keyed registries for interchangeable algorithm variants.
//!
//! Each family (eigensolvers, rewrite orders, representation builders)
//! exposes a trait with a `name`; a [`Registry`] holds boxed trait objects
//! in registration order and resolves them by name at runtime.

use crate::error::{Error, Result};

pub trait Named {
    fn name(&self) -> &'static str;
}

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds a variant. A later registration under an existing name replaces it.
    pub fn register(&mut self, entry: Box<T>) -> &mut Self {
        let name = entry.name();
        if let Some(slot) = self.entries.iter_mut().find(|e| e.name() == name) {
            *slot = entry;
        } else {
            self.entries.push(entry);
        }
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|b| b.as_ref())
    }
}
