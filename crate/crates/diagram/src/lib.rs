//! Oriented link diagrams in the thickened annulus.
//!
//! A diagram is a list of crossings over a set of oriented arcs, plus any
//! crossingless circles. Crossing records follow the planar-diagram
//! convention: the four incident arc ends are listed counterclockwise
//! starting from the incoming under-arc, so slot 0 is the under-strand
//! entering and slot 2 is it leaving. The over-strand occupies slots 1 and
//! 3; the sign says which way it runs (positive means it enters at slot 3).
//!
//! The annular structure is carried by a reference ray from the axis out to
//! infinity: each arc records its signed intersection count with the ray,
//! and the diagram keeps the radial order of those intersections. Winding
//! numbers of smoothed circles are sums of these counts.

pub mod braid;
pub mod faces;
pub mod goeritz;
pub mod pd;
pub mod resolve;
pub mod surgery;
pub mod twist;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("arc {arc} has {found} crossing incidences, expected exactly 2")]
    ArcIncidence { arc: u32, found: usize },
    #[error("arc {arc} is oriented inconsistently by its crossing records")]
    ArcOrientation { arc: u32 },
    #[error("crossing {crossing} references arc {arc} outside the arc range")]
    BadArcId { crossing: usize, arc: u32 },
    #[error("ray crossing list disagrees with the stored count for arc {arc}")]
    RayMismatch { arc: u32 },
    #[error("free circle {index} has winding {winding}, outside -1..=1")]
    CircleWinding { index: usize, winding: i32 },
    #[error("marked component does not exist")]
    BadMark,
    #[error("diagram is not connected")]
    NotConnected,
    #[error("operation needs a diagram without free circles")]
    HasFreeCircles,
    #[error("diagram has no ray intersections to anchor the radial walk")]
    NoRayArcs,
    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    CapacityExceeded { crossings: usize, cap: usize },
    #[error("smoothed circle has winding {winding}, outside -1..=1")]
    WindingRange { winding: i32 },
    #[error("checkerboard shading is inconsistent")]
    InconsistentShading,
    #[error("twist region mixes crossing signs")]
    MixedTwistRegion,
    #[error("braid word uses generator {letter} outside 1..{max}")]
    BadBraidLetter { letter: i32, max: u32 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// One crossing: the four incident arc ends counterclockwise from the
/// incoming under-arc, plus the handedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    /// Whether the arc in this slot points into the crossing here.
    pub fn slot_is_head(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => self.sign < 0,
            3 => self.sign > 0,
            _ => unreachable!("slot out of range"),
        }
    }
}

/// A crossingless component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeCircle {
    pub winding: i32,
}

/// The component carrying the basepoint, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Arc(u32),
    Circle(usize),
}

/// Where one end of an arc sits: which crossing and slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct End {
    pub crossing: usize,
    pub slot: usize,
}

/// Both ends of an arc in its own orientation.
#[derive(Clone, Copy, Debug)]
pub struct ArcEnds {
    pub tail: End,
    pub head: End,
}

#[derive(Clone, Debug, Default)]
pub struct AnnularDiagram {
    crossings: Vec<Crossing>,
    /// Signed ray-intersection count per arc.
    arc_ray: Vec<i32>,
    /// Ray intersections in radial order, innermost first, each with the
    /// sign it contributes to the winding of a circle traversing the arc
    /// forward.
    ray_order: Vec<(u32, i8)>,
    free_circles: Vec<FreeCircle>,
    marked: Option<Mark>,
}

impl AnnularDiagram {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_ray.len()
    }

    pub fn arc_ray(&self, arc: u32) -> i32 {
        self.arc_ray[arc as usize]
    }

    pub fn ray_order(&self) -> &[(u32, i8)] {
        &self.ray_order
    }

    pub fn free_circles(&self) -> &[FreeCircle] {
        &self.free_circles
    }

    pub fn marked(&self) -> Option<Mark> {
        self.marked
    }

    pub fn set_marked(&mut self, mark: Option<Mark>) {
        self.marked = mark;
    }

    pub fn n_plus(&self) -> u32 {
        self.crossings.iter().filter(|c| c.sign > 0).count() as u32
    }

    pub fn n_minus(&self) -> u32 {
        self.crossings.iter().filter(|c| c.sign < 0).count() as u32
    }

    pub fn writhe(&self) -> i32 {
        self.n_plus() as i32 - self.n_minus() as i32
    }

    /// Assembles a diagram from raw parts and validates it.
    pub fn from_parts(
        crossings: Vec<Crossing>,
        arc_ray: Vec<i32>,
        ray_order: Vec<(u32, i8)>,
        free_circles: Vec<FreeCircle>,
        marked: Option<Mark>,
    ) -> Result<Self, DiagramError> {
        let d = AnnularDiagram {
            crossings,
            arc_ray,
            ray_order,
            free_circles,
            marked,
        };
        d.validate()?;
        Ok(d)
    }

    /// Both ends of every arc, derived from the crossing records. Fails when
    /// an arc does not have exactly one incoming and one outgoing end.
    pub fn arc_ends(&self) -> Result<Vec<ArcEnds>, DiagramError> {
        #[derive(Clone, Copy, Default)]
        struct Slots {
            tail: Option<End>,
            head: Option<End>,
            count: usize,
        }
        let mut slots = vec![Slots::default(); self.arc_count()];
        for (ci, cr) in self.crossings.iter().enumerate() {
            for (si, &arc) in cr.arcs.iter().enumerate() {
                let entry = slots.get_mut(arc as usize).ok_or(DiagramError::BadArcId {
                    crossing: ci,
                    arc,
                })?;
                entry.count += 1;
                let end = End {
                    crossing: ci,
                    slot: si,
                };
                if cr.slot_is_head(si) {
                    if entry.head.replace(end).is_some() {
                        return Err(DiagramError::ArcOrientation { arc });
                    }
                } else if entry.tail.replace(end).is_some() {
                    return Err(DiagramError::ArcOrientation { arc });
                }
            }
        }
        slots
            .iter()
            .enumerate()
            .map(|(arc, s)| {
                if s.count != 2 {
                    Err(DiagramError::ArcIncidence {
                        arc: arc as u32,
                        found: s.count,
                    })
                } else {
                    Ok(ArcEnds {
                        tail: s.tail.ok_or(DiagramError::ArcOrientation { arc: arc as u32 })?,
                        head: s.head.ok_or(DiagramError::ArcOrientation { arc: arc as u32 })?,
                    })
                }
            })
            .collect()
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        for cr in &self.crossings {
            debug_assert!(cr.sign == 1 || cr.sign == -1);
        }
        self.arc_ends()?;
        let mut sums = vec![0i32; self.arc_count()];
        for &(arc, sign) in &self.ray_order {
            debug_assert!(sign == 1 || sign == -1);
            let slot = sums
                .get_mut(arc as usize)
                .ok_or(DiagramError::RayMismatch { arc })?;
            *slot += sign as i32;
        }
        for (arc, (&stored, &sum)) in self.arc_ray.iter().zip(&sums).enumerate() {
            if stored != sum {
                return Err(DiagramError::RayMismatch { arc: arc as u32 });
            }
        }
        for (index, c) in self.free_circles.iter().enumerate() {
            if c.winding.abs() > 1 {
                return Err(DiagramError::CircleWinding {
                    index,
                    winding: c.winding,
                });
            }
        }
        match self.marked {
            Some(Mark::Arc(a)) if (a as usize) >= self.arc_count() => {
                return Err(DiagramError::BadMark)
            }
            Some(Mark::Circle(i)) if i >= self.free_circles.len() => {
                return Err(DiagramError::BadMark)
            }
            _ => {}
        }
        Ok(())
    }

    /// Connectivity in the sense used by the splitting tree: no free
    /// circles and a connected crossing graph, or a crossingless diagram
    /// with at most one circle.
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            return self.free_circles.len() <= 1 && self.arc_count() == 0;
        }
        if !self.free_circles.is_empty() {
            return false;
        }
        // Crossings are adjacent when they share an arc.
        let mut owner: Vec<Option<usize>> = vec![None; self.arc_count()];
        let mut dsu: Vec<usize> = (0..self.crossings.len()).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            let mut root = x;
            while dsu[root] != root {
                root = dsu[root];
            }
            let mut cur = x;
            while dsu[cur] != root {
                let next = dsu[cur];
                dsu[cur] = root;
                cur = next;
            }
            root
        }
        for (ci, cr) in self.crossings.iter().enumerate() {
            for &arc in &cr.arcs {
                match owner[arc as usize] {
                    None => owner[arc as usize] = Some(ci),
                    Some(other) => {
                        let a = find(&mut dsu, ci);
                        let b = find(&mut dsu, other);
                        dsu[a] = b;
                    }
                }
            }
        }
        let root = find(&mut dsu, 0);
        (0..self.crossings.len()).all(|c| find(&mut dsu, c) == root)
    }

    /// Number of link components: arcs are on the same component when a
    /// strand passes straight through a crossing (opposite slots), and each
    /// crossingless circle is a component of its own.
    pub fn link_component_count(&self) -> usize {
        let mut dsu: Vec<usize> = (0..self.arc_count()).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            let mut root = x;
            while dsu[root] != root {
                root = dsu[root];
            }
            let mut cur = x;
            while dsu[cur] != root {
                let next = dsu[cur];
                dsu[cur] = root;
                cur = next;
            }
            root
        }
        for cr in &self.crossings {
            for pair in [(0, 2), (1, 3)] {
                let a = find(&mut dsu, cr.arcs[pair.0] as usize);
                let b = find(&mut dsu, cr.arcs[pair.1] as usize);
                dsu[a] = b;
            }
        }
        let strands = (0..self.arc_count())
            .filter(|&a| find(&mut dsu, a) == a)
            .count();
        strands + self.free_circles.len()
    }

    pub fn push_free_circle(&mut self, circle: FreeCircle) {
        self.free_circles.push(circle);
    }

    /// The same diagram with the basepoint forgotten.
    pub fn without_mark(&self) -> AnnularDiagram {
        let mut d = self.clone();
        d.marked = None;
        d
    }

    /// Enforces the crossing cap used by full-cube operations.
    pub fn check_capacity(&self, cap: usize) -> Result<(), DiagramError> {
        if self.crossing_count() > cap {
            Err(DiagramError::CapacityExceeded {
                crossings: self.crossing_count(),
                cap,
            })
        } else {
            Ok(())
        }
    }
}
