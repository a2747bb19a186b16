//! Lower, upper and double décalage, slices and coslices, and detection of
//! terminal and initial objects.

use crate::error::{Error, Result};
use crate::sset::{Cell, CellMap, SimpMap, TruncSSet};

/// A shifted set together with its comparison map into the original.
#[derive(Clone, Debug)]
pub struct DecResult {
    pub space: TruncSSet,
    pub map: SimpMap,
}

fn shifted(x: &TruncSSet, shift: usize, face_offset: usize) -> Result<TruncSSet> {
    let dim = x.dim() - shift;
    let names = (0..=dim).map(|k| x.names(k + shift).to_vec()).collect();
    let mut face = vec![Vec::new()];
    for k in 1..=dim {
        face.push((0..=k).map(|i| x.face_table(k + shift, i + face_offset).to_vec()).collect());
    }
    let mut degen: Vec<Vec<Vec<Cell>>> =
        (0..dim).map(|k| (0..=k).map(|i| x.degen_table(k + shift, i + face_offset).to_vec()).collect()).collect();
    degen.push(Vec::new());
    TruncSSet::from_raw(dim, names, face, degen)
}

fn need(x: &TruncSSet, n: usize) -> Result<()> {
    if x.dim() < n {
        return Err(Error::pre(format!("needs dimension bound at least {n}, got {}", x.dim())));
    }
    Ok(())
}

/// Degree `k` is `X_{k+1}`; the bottom operators are dropped. The comparison
/// map is `d_0`.
pub fn dec_bot(x: &TruncSSet) -> Result<DecResult> {
    need(x, 2)?;
    let space = shifted(x, 1, 1)?;
    let comp = CellMap((0..space.dim() + 1).map(|k| x.face_table(k + 1, 0).to_vec()).collect());
    let map = SimpMap::new(space.clone(), x.clone(), comp)?;
    Ok(DecResult { space, map })
}

/// Degree `k` is `X_{k+1}`; the top operators are dropped. The comparison
/// map is `d_top`.
pub fn dec_top(x: &TruncSSet) -> Result<DecResult> {
    need(x, 2)?;
    let space = shifted(x, 1, 0)?;
    let comp = CellMap((0..space.dim() + 1).map(|k| x.face_table(k + 1, k + 1).to_vec()).collect());
    let map = SimpMap::new(space.clone(), x.clone(), comp)?;
    Ok(DecResult { space, map })
}

/// Both décalages at once: degree `k` is `X_{k+2}` and the map is
/// `d_0 ∘ d_top`.
pub fn double_dec(x: &TruncSSet) -> Result<DecResult> {
    need(x, 3)?;
    let space = shifted(x, 2, 1)?;
    let comp = CellMap(
        (0..space.dim() + 1)
            .map(|k| x.cells(k + 2).map(|c| x.face(k + 1, 0, x.face(k + 2, k + 2, c))).collect())
            .collect(),
    );
    let map = SimpMap::new(space.clone(), x.clone(), comp)?;
    Ok(DecResult { space, map })
}

/// The sub-object on the kept cells, which must be closed under all
/// operators; also returns the inclusion positions.
pub fn subobject(x: &TruncSSet, keep: &[Vec<bool>]) -> Result<(TruncSSet, CellMap)> {
    let dim = x.dim();
    let incl: Vec<Vec<Cell>> = (0..=dim).map(|k| x.cells(k).filter(|&c| keep[k][c as usize]).collect()).collect();
    let mut pos = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let mut p = vec![Cell::MAX; x.len(k)];
        for (i, &c) in incl[k].iter().enumerate() {
            p[c as usize] = i as Cell;
        }
        pos.push(p);
    }
    let remap = |k: usize, c: Cell| -> Result<Cell> {
        let p = pos[k][c as usize];
        if p == Cell::MAX {
            return Err(Error::pre(format!("cell '{}' of degree {k} lies outside the sub-object", x.name(k, c))));
        }
        Ok(p)
    };
    let names = (0..=dim).map(|k| incl[k].iter().map(|&c| x.name(k, c).to_string()).collect()).collect();
    let mut face = vec![Vec::new()];
    for k in 1..=dim {
        face.push((0..=k).map(|i| incl[k].iter().map(|&c| remap(k - 1, x.face(k, i, c))).collect()).collect::<Result<Vec<_>>>()?);
    }
    let mut degen = Vec::new();
    for k in 0..dim {
        degen.push((0..=k).map(|i| incl[k].iter().map(|&c| remap(k + 1, x.degen(k, i, c))).collect()).collect::<Result<Vec<_>>>()?);
    }
    degen.push(Vec::new());
    Ok((TruncSSet::from_raw(dim, names, face, degen)?, CellMap(incl)))
}

fn fibre_of_dec(x: &TruncSSet, dec: DecResult, endpoint: impl Fn(usize, Cell) -> Cell, point: Cell) -> Result<DecResult> {
    let d = &dec.space;
    let keep: Vec<Vec<bool>> = (0..=d.dim()).map(|k| d.cells(k).map(|c| endpoint(k + 1, c) == point).collect()).collect();
    let (space, incl) = subobject(d, &keep)?;
    let map = SimpMap::new(space.clone(), x.clone(), incl.then(&dec.map.comp))?;
    Ok(DecResult { space, map })
}

/// Degree `k` consists of the cells of `X_{k+1}` whose last vertex is `y`;
/// the projection deletes that vertex.
pub fn slice(x: &TruncSSet, y: Cell) -> Result<DecResult> {
    let dec = dec_top(x)?;
    fibre_of_dec(x, dec, |k, c| x.vertex(k, c, k), y)
}

/// Degree `k` consists of the cells of `X_{k+1}` whose first vertex is `y`;
/// the projection deletes that vertex.
pub fn coslice(x: &TruncSSet, y: Cell) -> Result<DecResult> {
    let dec = dec_bot(x)?;
    fibre_of_dec(x, dec, |k, c| x.vertex(k, c, 0), y)
}

/// Vertices whose slice projects bijectively onto `X` within the truncation.
pub fn find_terminal(x: &TruncSSet) -> Result<Vec<Cell>> {
    need(x, 2)?;
    x.cells(0).filter_map(|y| slice(x, y).map(|s| s.map.is_levelwise_bijective().then_some(y)).transpose()).collect()
}

/// Vertices whose coslice projects bijectively onto `X` within the truncation.
pub fn find_initial(x: &TruncSSet) -> Result<Vec<Cell>> {
    need(x, 2)?;
    x.cells(0).filter_map(|y| coslice(x, y).map(|s| s.map.is_levelwise_bijective().then_some(y)).transpose()).collect()
}
