use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use super::{SpherePoint, Vector};

/// Subdivided icosahedron on S² with vertex adjacency.
#[derive(Debug)]
pub struct Icosphere {
    pub level: usize,
    pub vertices: Vec<SpherePoint>,
    pub faces: Vec<[usize; 3]>,
    pub neighbors: Vec<Vec<usize>>,
    /// Mean geodesic edge length.
    pub spacing: f64,
}

static CACHE: Lazy<Mutex<HashMap<usize, Arc<Icosphere>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl Icosphere {
    /// Shared instance per level; each level is built once per process.
    pub fn cached(level: usize) -> Arc<Icosphere> {
        let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
        cache
            .entry(level)
            .or_insert_with(|| Arc::new(Icosphere::build(level)))
            .clone()
    }

    pub fn build(level: usize) -> Icosphere {
        let t = (1.0 + 5f64.sqrt()) / 2.0;
        let raw = [
            [-1.0, t, 0.0],
            [1.0, t, 0.0],
            [-1.0, -t, 0.0],
            [1.0, -t, 0.0],
            [0.0, -1.0, t],
            [0.0, 1.0, t],
            [0.0, -1.0, -t],
            [0.0, 1.0, -t],
            [t, 0.0, -1.0],
            [t, 0.0, 1.0],
            [-t, 0.0, -1.0],
            [-t, 0.0, 1.0],
        ];
        let mut verts: Vec<Vector> = raw
            .iter()
            .map(|c| Vector::new(c).normalized().expect("nonzero"))
            .collect();
        let mut faces: Vec<[usize; 3]> = vec![
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ];
        for _ in 0..level {
            let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
            let mut next = Vec::with_capacity(faces.len() * 4);
            let mut midpoint = |a: usize, b: usize, verts: &mut Vec<Vector>| -> usize {
                let key = (a.min(b), a.max(b));
                *mid.entry(key).or_insert_with(|| {
                    verts.push((verts[a] + verts[b]).normalized().expect("non-antipodal edge"));
                    verts.len() - 1
                })
            };
            for &[a, b, c] in &faces {
                let ab = midpoint(a, b, &mut verts);
                let bc = midpoint(b, c, &mut verts);
                let ca = midpoint(c, a, &mut verts);
                next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
            }
            faces = next;
        }
        let mut neighbors = vec![Vec::new(); verts.len()];
        for &[a, b, c] in &faces {
            for (x, y) in [(a, b), (b, c), (c, a)] {
                if !neighbors[x].contains(&y) {
                    neighbors[x].push(y);
                }
                if !neighbors[y].contains(&x) {
                    neighbors[y].push(x);
                }
            }
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        let vertices: Vec<SpherePoint> = verts.into_iter().map(SpherePoint::from_unit).collect();
        let (mut total, mut count) = (0.0, 0usize);
        for (i, nb) in neighbors.iter().enumerate() {
            for &j in nb {
                total += super::geodesic_distance(&vertices[i], &vertices[j]);
                count += 1;
            }
        }
        Icosphere {
            level,
            vertices,
            faces,
            neighbors,
            spacing: total / count as f64,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices within `rings` edges of any vertex in `seeds`.
    pub fn dilate(&self, mask: &[bool], rings: usize) -> Vec<bool> {
        let mut cur = mask.to_vec();
        for _ in 0..rings {
            let mut next = cur.clone();
            for (i, &on) in cur.iter().enumerate() {
                if on {
                    for &j in &self.neighbors[i] {
                        next[j] = true;
                    }
                }
            }
            cur = next;
        }
        cur
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_subdivision_formula() {
        for level in 0..4 {
            let ico = Icosphere::build(level);
            assert_eq!(ico.len(), 10 * 4usize.pow(level as u32) + 2);
            assert_eq!(ico.faces.len(), 20 * 4usize.pow(level as u32));
            let valence: usize = ico.neighbors.iter().map(Vec::len).sum();
            assert_eq!(valence, 3 * ico.faces.len());
        }
    }
}
