use crate::error::{Error, Result};
use crate::geometry::TuType;

/// The catalog sorted by increasing volume, scanned circularly.
#[derive(Debug, Clone, PartialEq)]
pub struct TypePointer {
    types: Vec<TuType>,
    index: usize,
}

impl TypePointer {
    /// A pointer at the smallest-volume type. Equal volumes keep catalog order.
    pub fn new(catalog: &[TuType]) -> Result<Self> {
        if catalog.is_empty() {
            return Err(Error::EmptyCatalog);
        }
        let mut types = catalog.to_vec();
        types.sort_by_key(TuType::volume_cm3);
        Ok(Self { types, index: 0 })
    }

    pub fn current(&self) -> &TuType {
        &self.types[self.index]
    }

    /// The type `k` steps ahead of the current one.
    pub fn peek(&self, k: usize) -> &TuType {
        &self.types[(self.index + k) % self.types.len()]
    }

    pub fn advance(&mut self) {
        self.index = (self.index + 1) % self.types.len();
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn types(&self) -> &[TuType] {
        &self.types
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_by_volume_and_wraps() {
        let big = TuType::from_dims(120, 120, 160, 1).unwrap();
        let mid = TuType::from_dims(120, 100, 130, 1).unwrap();
        let small = TuType::from_dims(120, 80, 130, 1).unwrap();
        let mut p = TypePointer::new(&[big, small, mid]).unwrap();
        let ids: Vec<&str> = p.types().iter().map(|t| t.id.as_str()).collect();
        assert_eq!(ids, ["120x80x130", "120x100x130", "120x120x160"]);
        assert_eq!(p.current().id, "120x80x130");
        p.advance();
        p.advance();
        assert_eq!(p.peek(1).id, "120x80x130");
        p.advance();
        assert_eq!(p.index(), 0);
    }

    #[test]
    fn empty_catalog_is_an_error() {
        assert_eq!(TypePointer::new(&[]), Err(Error::EmptyCatalog));
    }
}
