//! Minimal projective resolutions over the local algebra `kG`.

use alloc::vec::Vec;

use super::KGModule;
use crate::gf::{free_columns, Matrix};

impl KGModule {
    /// Vectors whose images form a basis of `M / rad M`, chosen greedily from
    /// the standard basis so the choice is deterministic.
    pub fn top_generators(&self) -> Vec<Vec<u32>> {
        let f = self.group().field();
        let d = self.dim();
        let mut aug = Matrix::zero(f, d, 0);
        for x in self.augmentation_generators() {
            aug = aug.hstack(&x).expect("same rows");
        }
        let rad_cols = aug.cols();
        let aug = aug.hstack(&Matrix::identity(f, d)).expect("same rows");
        aug.echelon()
            .pivots
            .into_iter()
            .filter(|&c| c >= rad_cols)
            .map(|c| {
                let mut v = alloc::vec![0; d];
                v[c - rad_cols] = 1;
                v
            })
            .collect()
    }

    /// One step of the minimal resolution: returns `b_0 = dim M/rad M` and the
    /// kernel `ΩM` of the projective cover `kG^{b_0} → M`.
    pub fn syzygy(&self) -> (usize, KGModule) {
        let group = self.group();
        let f = group.field();
        let gens = self.top_generators();
        let b = gens.len();
        let order = group.order();
        if b == 0 {
            return (0, KGModule::zero(group));
        }
        let d = self.dim();
        let width = b * order;
        // Column (j, h) of the cover is h·v_j, h in group-index order.
        let mut cover = Matrix::zero(f, d, width);
        let p = group.p() as usize;
        for (j, v) in gens.iter().enumerate() {
            let mut images: Vec<Vec<u32>> = Vec::with_capacity(order);
            images.push(v.clone());
            for h in 1..order {
                let (lowest, stride) = lowest_nonzero_digit(h, p);
                let prev = h - stride;
                images.push(self.generators()[lowest].mul_vec(&images[prev]));
            }
            for (h, img) in images.iter().enumerate() {
                for (i, &x) in img.iter().enumerate() {
                    cover.set(i, j * order + h, x);
                }
            }
        }
        let echelon = cover.echelon();
        debug_assert_eq!(echelon.pivots.len(), d, "cover must be surjective");
        let free = free_columns(width, &echelon.pivots);
        let kernel = cover.kernel_basis();
        let k = kernel.cols();
        // Generator g_i permutes free coordinates (j, h) ↦ (j, h + e_i); in the
        // kernel basis, coordinates are read off at the free columns.
        let omega_gens = (0..group.n())
            .map(|i| {
                let stride = p.pow(i as u32);
                let source_rows: Vec<usize> = free
                    .iter()
                    .map(|&c| {
                        let (j, h) = (c / order, c % order);
                        let digit = (h / stride) % p;
                        let prev = h - digit * stride + ((digit + p - 1) % p) * stride;
                        j * order + prev
                    })
                    .collect();
                kernel.select_rows(&source_rows)
            })
            .collect();
        (b, KGModule::from_parts(group, k, omega_gens))
    }

    /// `b_0, …, b_steps` of the minimal projective resolution.
    pub fn betti_numbers(&self, steps: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(steps + 1);
        let mut current = self.clone();
        for t in 0..=steps {
            let (b, omega) = current.syzygy();
            out.push(b);
            if b == 0 {
                out.resize(steps + 1, 0);
                break;
            }
            if t < steps {
                current = omega;
            }
        }
        out
    }
}

fn lowest_nonzero_digit(mut h: usize, p: usize) -> (usize, usize) {
    let (mut i, mut stride) = (0, 1);
    while h.is_multiple_of(p) {
        h /= p;
        i += 1;
        stride *= p;
    }
    (i, stride)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kg::GroupSpec;

    #[test]
    fn projective_resolution_stops() {
        let g = GroupSpec::new(2, 2).unwrap();
        let kg = KGModule::regular(&g);
        let two = kg.direct_sum(&kg).unwrap();
        assert_eq!(two.betti_numbers(4), [2, 0, 0, 0, 0]);
    }

    #[test]
    fn klein_trivial_module() {
        let g = GroupSpec::new(2, 2).unwrap();
        let k = KGModule::trivial(&g);
        let b = k.betti_numbers(8);
        assert_eq!(b, (1..=9).collect::<Vec<_>>());
    }

    #[test]
    fn klein_u_is_periodic() {
        let g = GroupSpec::new(2, 2).unwrap();
        let u = KGModule::quotient(&g, &[1]).unwrap();
        assert_eq!(u.betti_numbers(6), [1; 7]);
        let (_, omega) = u.syzygy();
        assert_eq!(omega.dim(), 2);
        assert!(!omega.is_projective());
    }

    #[test]
    fn shift_relation() {
        let g = GroupSpec::new(3, 2).unwrap();
        let k = KGModule::trivial(&g);
        let b = k.betti_numbers(5);
        let (_, omega) = k.syzygy();
        assert_eq!(&b[1..], &omega.betti_numbers(4)[..]);
        // k[x,y]/(x^3,y^3): Poincaré series 1/(1-t)^2.
        assert_eq!(b, [1, 2, 3, 4, 5, 6]);
    }
}
