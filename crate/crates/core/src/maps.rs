//! Graded algebra maps between presentations and the standard structural
//! maps on jet presentations: truncations, the zero section, dilation, and
//! maps induced by base maps.
//!
//! Every constructor certifies well-definedness: each source relation must
//! map into the target's relation ideal (Groebner membership; over the
//! fraction field when the coefficients are integers).

use crate::coeff::Coeff;
use crate::monomial::{JetVariable, Monomial};
use crate::poly::{PolyError, Polynomial};
use crate::presentation::{in_relation_ideal, jet_presentation, JetError, Presentation};
use crate::prolong::prolong;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("no image given for source generator {0}")]
    MissingImage(JetVariable),
    #[error("image given for {0}, which is not a source generator")]
    ExtraImage(JetVariable),
    #[error("image of {generator} mentions {var}, which is not declared in the target")]
    ImageUsesUndeclared { generator: JetVariable, var: JetVariable },
    #[error("source constant `{0}` is not a constant of the target")]
    ConstantNotCarried(String),
    #[error("map is ill-defined: relation `{relation}` maps to `{image}`, which is not in the target's relation ideal")]
    IllDefined { relation: String, image: String },
    #[error("dilation scalar `{0}` collides with a target symbol")]
    DilationNameCollision(String),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A dilation scalar: a formal symbol adjoined to the target, or a concrete
/// ring element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DilationScalar {
    Formal(String),
    Value(Coeff),
}

impl fmt::Display for DilationScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DilationScalar::Formal(name) => write!(f, "{name}"),
            DilationScalar::Value(c) => write!(f, "{c}"),
        }
    }
}

/// How the map interacts with the weight grading; descriptive metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightRule {
    /// Weight-w elements map to weight-w elements.
    Preserving,
    /// A weight-w generator maps to z^w times a weight-w image.
    Dilation(DilationScalar),
    /// Composite of maps with different rules.
    Composite,
}

impl fmt::Display for WeightRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightRule::Preserving => write!(f, "weight-preserving"),
            WeightRule::Dilation(z) => write!(f, "dilation by {z}"),
            WeightRule::Composite => write!(f, "composite"),
        }
    }
}

/// A generator-image map between presentations, certified well-defined at
/// construction.
#[derive(Debug, Clone)]
pub struct GradedAlgebraMap {
    source: Presentation,
    target: Presentation,
    images: BTreeMap<JetVariable, Polynomial>,
    weight_rule: WeightRule,
}

impl GradedAlgebraMap {
    pub fn new(
        source: Presentation,
        target: Presentation,
        images: BTreeMap<JetVariable, Polynomial>,
        weight_rule: WeightRule,
    ) -> Result<Self, MapError> {
        for g in source.generators() {
            if !images.contains_key(g) {
                return Err(MapError::MissingImage(g.clone()));
            }
        }
        for key in images.keys() {
            if !source.generators().contains(key) {
                return Err(MapError::ExtraImage(key.clone()));
            }
        }
        for c in source.constants() {
            if !target.constants().contains(c) {
                return Err(MapError::ConstantNotCarried(c.clone()));
            }
        }
        let declared: Vec<JetVariable> = target
            .generators()
            .iter()
            .cloned()
            .chain(target.constants().iter().map(JetVariable::base_var))
            .collect();
        for (g, image) in &images {
            if image.ring() != target.ring() {
                return Err(MapError::Poly(PolyError::RingMismatch(
                    image.ring(),
                    target.ring(),
                )));
            }
            for v in image.variables() {
                if !declared.contains(&v) {
                    return Err(MapError::ImageUsesUndeclared { generator: g.clone(), var: v });
                }
            }
        }
        let map = GradedAlgebraMap { source, target, images, weight_rule };
        map.certify()?;
        Ok(map)
    }

    fn certify(&self) -> Result<(), MapError> {
        for relation in self.source.relations() {
            let image = self.apply(relation)?;
            if !in_relation_ideal(&image, &self.target)? {
                return Err(MapError::IllDefined {
                    relation: relation.to_string(),
                    image: image.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Unchecked construction for maps that are well-defined by construction
    /// (identity, composition of certified maps).
    fn new_unchecked(
        source: Presentation,
        target: Presentation,
        images: BTreeMap<JetVariable, Polynomial>,
        weight_rule: WeightRule,
    ) -> Self {
        GradedAlgebraMap { source, target, images, weight_rule }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn weight_rule(&self) -> &WeightRule {
        &self.weight_rule
    }

    pub fn image_of(&self, g: &JetVariable) -> &Polynomial {
        &self.images[g]
    }

    pub fn images(&self) -> &BTreeMap<JetVariable, Polynomial> {
        &self.images
    }

    /// Applies the map to a polynomial in the source's symbols. When source
    /// and target rings differ only in that the map itself was built over the
    /// same ring, this is plain substitution; constants pass through.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, MapError> {
        let f = if f.ring() == self.target.ring() {
            f.clone()
        } else {
            f.map_coefficients(self.target.ring())?
        };
        Ok(f.substitute(&self.images)?)
    }

    /// Composition: self: S -> T followed by `next`: T -> U.
    pub fn compose(&self, next: &GradedAlgebraMap) -> Result<GradedAlgebraMap, MapError> {
        let mut images = BTreeMap::new();
        for (g, img) in &self.images {
            images.insert(g.clone(), next.apply(img)?);
        }
        let weight_rule = match (&self.weight_rule, &next.weight_rule) {
            (WeightRule::Preserving, r) | (r, WeightRule::Preserving) => r.clone(),
            (WeightRule::Dilation(DilationScalar::Value(a)), WeightRule::Dilation(DilationScalar::Value(b))) => {
                WeightRule::Dilation(DilationScalar::Value(a.mul(b)))
            }
            _ => WeightRule::Composite,
        };
        Ok(GradedAlgebraMap::new_unchecked(
            self.source.clone(),
            next.target.clone(),
            images,
            weight_rule,
        ))
    }

    pub fn identity(p: &Presentation) -> GradedAlgebraMap {
        let images = p
            .generators()
            .iter()
            .map(|g| (g.clone(), Polynomial::variable(p.ring(), g.clone())))
            .collect();
        GradedAlgebraMap::new_unchecked(p.clone(), p.clone(), images, WeightRule::Preserving)
    }

    /// Generator-wise equality of images (the notion of map equality used by
    /// the functoriality and group-law checks).
    pub fn images_equal(&self, other: &GradedAlgebraMap) -> bool {
        self.images == other.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().all(|(g, img)| {
            img == &Polynomial::variable(self.target.ring(), g.clone())
        })
    }
}

/// The truncation map between jet presentations of orders i <= j, sending
/// each d_k x to itself.
pub fn truncation_map(p: &Presentation, i: u32, j: u32) -> Result<GradedAlgebraMap, MapError> {
    assert!(i <= j, "truncation maps go from lower to higher jet order");
    let source = jet_presentation(p, i)?;
    let target = jet_presentation(p, j)?;
    let images = source
        .generators()
        .iter()
        .map(|g| (g.clone(), Polynomial::variable(target.ring(), g.clone())))
        .collect();
    GradedAlgebraMap::new(source, target, images, WeightRule::Preserving)
}

/// The zero section: d_k x -> 0 for k >= 1, x -> x.
pub fn zero_section_map(p: &Presentation, m: u32) -> Result<GradedAlgebraMap, MapError> {
    let source = jet_presentation(p, m)?;
    let images = source
        .generators()
        .iter()
        .map(|g| {
            let image = if g.order() == 0 {
                Polynomial::variable(p.ring(), g.clone())
            } else {
                Polynomial::zero(p.ring())
            };
            (g.clone(), image)
        })
        .collect();
    GradedAlgebraMap::new(source, p.clone(), images, WeightRule::Preserving)
}

/// The dilation d_j x -> z^j d_j x. A formal scalar is adjoined to the target
/// as a fresh weight-0 generator; a concrete scalar keeps the target equal to
/// the source.
pub fn dilation_map(
    p: &Presentation,
    m: u32,
    z: DilationScalar,
) -> Result<GradedAlgebraMap, MapError> {
    let source = jet_presentation(p, m)?;
    let (target, images) = match &z {
        DilationScalar::Formal(name) => {
            if source.generators().iter().any(|g| g.base() == name)
                || source.constants().iter().any(|c| c == name)
            {
                return Err(MapError::DilationNameCollision(name.clone()));
            }
            let mut generators = source.generators().to_vec();
            let zvar = JetVariable::base_var(name);
            generators.push(zvar.clone());
            let target = Presentation::new(
                source.ring(),
                source.constants().to_vec(),
                generators,
                source.relations().to_vec(),
                source.jet_order(),
            )?;
            let images: BTreeMap<JetVariable, Polynomial> = source
                .generators()
                .iter()
                .map(|g| {
                    let mono = Monomial::var(g.clone())
                        .mul(&Monomial::var(zvar.clone()).pow(g.order()));
                    (g.clone(), Polynomial::from_terms(source.ring(), [(mono, source.ring().one())]))
                })
                .collect();
            (target, images)
        }
        DilationScalar::Value(c) => {
            let images: BTreeMap<JetVariable, Polynomial> = source
                .generators()
                .iter()
                .map(|g| {
                    let scaled =
                        Polynomial::variable(source.ring(), g.clone()).scale(&c.pow(g.order()));
                    (g.clone(), scaled)
                })
                .collect();
            (source.clone(), images)
        }
    };
    GradedAlgebraMap::new(source, target, images, WeightRule::Dilation(z))
}

/// Functorial map on jets induced by a base map phi: d_k x -> d_k(phi(x)).
/// `phi` must be a certified map between jet-order-0 presentations.
pub fn induced_map(phi: &GradedAlgebraMap, m: u32) -> Result<GradedAlgebraMap, MapError> {
    let source = jet_presentation(phi.source(), m)?;
    let target = jet_presentation(phi.target(), m)?;
    let ctx = phi.target().prolongation_context(m)?;
    let mut images = BTreeMap::new();
    for g in source.generators() {
        let base_image = phi.image_of(&JetVariable::base_var(g.base()));
        let image = prolong(base_image, g.order(), &ctx).map_err(JetError::from)?;
        images.insert(g.clone(), image);
    }
    GradedAlgebraMap::new(source, target, images, WeightRule::Preserving)
}
