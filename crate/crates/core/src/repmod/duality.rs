use super::{Morphism, Representation};

impl Representation {
    /// `D M = Hom_k(M, k)` over the opposite algebra: same dimensions,
    /// transposed arrow matrices on the reversed quiver.
    pub fn dual(&self) -> Representation {
        let op = self.algebra().opposite_arc();
        let maps = self.maps().iter().map(|m| m.transpose()).collect();
        Representation::new_unchecked(op, self.dims().to_vec(), maps)
    }
}

impl Morphism {
    /// `D f: D N -> D M`.
    pub fn dual(&self) -> Morphism {
        let comps = self.comps().iter().map(|c| c.transpose()).collect();
        Morphism::new_unchecked(self.target().dual(), self.source().dual(), comps)
    }
}
