//! Textual description of resolution spaces: a JSON schema with string-encoded
//! integers and rationals, a parser that reports schema violations with JSON-pointer
//! paths, and a serializer whose output the parser round-trips byte-identically.
//! The schema is documented in `docs/format.md`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use equires_core::groups::{
    cyclic, dihedral, symmetric, trivial_group, FiniteGroup, GroupAction, GroupDesc,
    InclusionData, LabelAction, SubgroupInclusion,
};
use equires_core::linalg::{QMat, Rat};
use equires_core::resolution::{
    Cell, CellComplex, CellMap, Monodromy, ResolutionSpace, Stratum, Triangle,
};

/// A schema violation, located by a JSON pointer into the document.
#[derive(Clone, Debug)]
pub struct FormatError {
    pub pointer: String,
    pub message: String,
}

impl FormatError {
    fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        FormatError {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pointer, self.message)
    }
}

impl std::error::Error for FormatError {}

// ---------------------------------------------------------------------------
// Document shape. Field order here fixes the serialized key order.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    name: String,
    groups: Vec<GroupDoc>,
    complexes: Vec<ComplexDoc>,
    strata: StrataDoc,
    faces: Vec<FaceDoc>,
    fibrations: Vec<FibrationDoc>,
    monodromy: Vec<TwistDoc>,
    triangles: Vec<TriangleDoc>,
    contractible: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    id: String,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    rank: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    factors: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    id: String,
    cells: Vec<CellDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDoc {
    dim: String,
    /// Pairs [face id, incidence number].
    boundary: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrataDoc {
    principal: PrincipalDoc,
    boundary: Vec<StratumDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PrincipalDoc {
    complex: String,
    group: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumDoc {
    name: String,
    class: String,
    complex: String,
    group: String,
    inclusion: InclusionDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InclusionDoc {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    map: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    index: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    inner: Option<Box<InclusionDoc>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    parts: Option<Vec<InclusionDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceDoc {
    cells: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FibrationDoc {
    image: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistDoc {
    /// "principal" or the decimal index of a boundary stratum.
    stratum: String,
    cell: String,
    entry: String,
    action: ActionDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionDoc {
    labels: LabelDoc,
    lie: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelDoc {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    perm: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    parts: Option<Vec<LabelDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangleDoc {
    deeper: String,
    shallower: String,
    /// Pairs [shallower base cell, deeper base cell].
    map: Vec<[String; 2]>,
}

// ---------------------------------------------------------------------------
// Scalar helpers.
// ---------------------------------------------------------------------------

fn parse_num<T: FromStr>(s: &str, pointer: &str, what: &str) -> Result<T, FormatError> {
    s.parse::<T>()
        .map_err(|_| FormatError::new(pointer, format!("'{s}' is not a valid {what}")))
}

fn parse_rat(s: &str, pointer: &str) -> Result<Rat, FormatError> {
    Rat::from_str(s)
        .map_err(|_| FormatError::new(pointer, format!("'{s}' is not a rational a/b")))
}

fn parse_rat_matrix(m: &[Vec<String>], pointer: &str) -> Result<QMat, FormatError> {
    let mut rows = Vec::with_capacity(m.len());
    for (i, row) in m.iter().enumerate() {
        if row.len() != m[0].len() {
            return Err(FormatError::new(
                format!("{pointer}/{i}"),
                "matrix rows have unequal lengths",
            ));
        }
        let mut out = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            out.push(parse_rat(v, &format!("{pointer}/{i}/{j}"))?);
        }
        rows.push(out);
    }
    Ok(QMat::from_dense(rows))
}

fn parse_int_matrix(m: &[Vec<String>], pointer: &str) -> Result<Vec<Vec<i64>>, FormatError> {
    let mut rows = Vec::with_capacity(m.len());
    for (i, row) in m.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            out.push(parse_num::<i64>(v, &format!("{pointer}/{i}/{j}"), "integer")?);
        }
        rows.push(out);
    }
    Ok(rows)
}

fn rat_matrix_doc(m: &QMat) -> Vec<Vec<String>> {
    m.to_dense()
        .iter()
        .map(|row| row.iter().map(|v| v.to_string()).collect())
        .collect()
}

fn int_matrix_doc(m: &[Vec<i64>]) -> Vec<Vec<String>> {
    m.iter()
        .map(|row| row.iter().map(|v| v.to_string()).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// Parsing.
// ---------------------------------------------------------------------------

/// Parses a resolution space description. Syntax errors carry the position reported by
/// the JSON parser; schema violations carry a JSON pointer to the offending member.
pub fn parse_space(text: &str) -> Result<ResolutionSpace, FormatError> {
    let doc: SpaceDoc = serde_json::from_str(text)
        .map_err(|e| FormatError::new("/", format!("malformed document: {e}")))?;

    // Groups, single pass: references must point at earlier entries.
    let mut groups: Vec<(String, GroupDesc)> = Vec::with_capacity(doc.groups.len());
    for (i, g) in doc.groups.iter().enumerate() {
        let ptr = format!("/groups/{i}");
        if groups.iter().any(|(id, _)| *id == g.id) {
            return Err(FormatError::new(
                format!("{ptr}/id"),
                format!("duplicate group id '{}'", g.id),
            ));
        }
        let desc = match g.kind.as_str() {
            "trivial" => GroupDesc::trivial(),
            "torus" => {
                let r = g.rank.as_deref().ok_or_else(|| {
                    FormatError::new(format!("{ptr}/rank"), "required for kind 'torus'")
                })?;
                GroupDesc::Torus(parse_num(r, &format!("{ptr}/rank"), "rank")?)
            }
            "cyclic" => {
                let o = g.order.as_deref().ok_or_else(|| {
                    FormatError::new(format!("{ptr}/order"), "required for kind 'cyclic'")
                })?;
                let n: usize = parse_num(o, &format!("{ptr}/order"), "order")?;
                if n == 0 {
                    return Err(FormatError::new(format!("{ptr}/order"), "order must be ≥ 1"));
                }
                GroupDesc::Finite(cyclic(n))
            }
            "symmetric" => {
                let d = g.degree.as_deref().ok_or_else(|| {
                    FormatError::new(format!("{ptr}/degree"), "required for kind 'symmetric'")
                })?;
                let n: usize = parse_num(d, &format!("{ptr}/degree"), "degree")?;
                if !(1..=6).contains(&n) {
                    return Err(FormatError::new(
                        format!("{ptr}/degree"),
                        "degree must be between 1 and 6",
                    ));
                }
                GroupDesc::Finite(symmetric(n))
            }
            "dihedral" => {
                let o = g.order.as_deref().ok_or_else(|| {
                    FormatError::new(format!("{ptr}/order"), "required for kind 'dihedral'")
                })?;
                let n: usize = parse_num(o, &format!("{ptr}/order"), "order")?;
                if n < 3 {
                    return Err(FormatError::new(format!("{ptr}/order"), "order must be ≥ 3"));
                }
                GroupDesc::Finite(dihedral(n))
            }
            "product" => {
                let factors = g.factors.as_ref().ok_or_else(|| {
                    FormatError::new(format!("{ptr}/factors"), "required for kind 'product'")
                })?;
                let mut resolved = Vec::with_capacity(factors.len());
                for (j, f) in factors.iter().enumerate() {
                    let found = groups.iter().find(|(id, _)| id == f).ok_or_else(|| {
                        FormatError::new(
                            format!("{ptr}/factors/{j}"),
                            format!("unknown group id '{f}' (factors must be declared earlier)"),
                        )
                    })?;
                    resolved.push(found.1.clone());
                }
                GroupDesc::Product(resolved)
            }
            "circle-semidirect-z2" => GroupDesc::circle_semidirect_z2(),
            other => {
                return Err(FormatError::new(
                    format!("{ptr}/kind"),
                    format!("unknown group kind '{other}'"),
                ));
            }
        };
        groups.push((g.id.clone(), desc));
    }
    let group_by_id = |id: &str, pointer: String| -> Result<GroupDesc, FormatError> {
        groups
            .iter()
            .find(|(gid, _)| gid == id)
            .map(|(_, g)| g.clone())
            .ok_or_else(|| FormatError::new(pointer, format!("unknown group id '{id}'")))
    };

    // Complexes.
    let mut complexes: Vec<(String, CellComplex)> = Vec::with_capacity(doc.complexes.len());
    for (i, c) in doc.complexes.iter().enumerate() {
        let ptr = format!("/complexes/{i}");
        if complexes.iter().any(|(id, _)| *id == c.id) {
            return Err(FormatError::new(
                format!("{ptr}/id"),
                format!("duplicate complex id '{}'", c.id),
            ));
        }
        let mut cells = Vec::with_capacity(c.cells.len());
        for (j, cell) in c.cells.iter().enumerate() {
            let dim = parse_num::<usize>(
                &cell.dim,
                &format!("{ptr}/cells/{j}/dim"),
                "dimension",
            )?;
            let mut boundary = Vec::with_capacity(cell.boundary.len());
            for (k, [face, inc]) in cell.boundary.iter().enumerate() {
                let f = parse_num::<usize>(
                    face,
                    &format!("{ptr}/cells/{j}/boundary/{k}/0"),
                    "cell id",
                )?;
                if f >= c.cells.len() {
                    return Err(FormatError::new(
                        format!("{ptr}/cells/{j}/boundary/{k}/0"),
                        format!("face id {f} is out of range (complex has {} cells)", c.cells.len()),
                    ));
                }
                let n = parse_num::<i64>(
                    inc,
                    &format!("{ptr}/cells/{j}/boundary/{k}/1"),
                    "incidence number",
                )?;
                boundary.push((f, n));
            }
            cells.push(Cell { dim, boundary });
        }
        let complex = CellComplex::new(cells)
            .map_err(|e| FormatError::new(ptr.clone(), e.to_string()))?;
        complexes.push((c.id.clone(), complex));
    }
    let complex_by_id = |id: &str, pointer: String| -> Result<CellComplex, FormatError> {
        complexes
            .iter()
            .find(|(cid, _)| cid == id)
            .map(|(_, c)| c.clone())
            .ok_or_else(|| FormatError::new(pointer, format!("unknown complex id '{id}'")))
    };

    // Principal stratum.
    let total = complex_by_id(&doc.strata.principal.complex, "/strata/principal/complex".into())?;
    let principal_group = group_by_id(&doc.strata.principal.group, "/strata/principal/group".into())?;

    // Boundary strata need their faces and fibrations, which live in parallel arrays.
    if doc.faces.len() != doc.strata.boundary.len() {
        return Err(FormatError::new(
            "/faces",
            format!(
                "{} face entries for {} boundary strata",
                doc.faces.len(),
                doc.strata.boundary.len()
            ),
        ));
    }
    if doc.fibrations.len() != doc.strata.boundary.len() {
        return Err(FormatError::new(
            "/fibrations",
            format!(
                "{} fibration entries for {} boundary strata",
                doc.fibrations.len(),
                doc.strata.boundary.len()
            ),
        ));
    }

    let mut strata = Vec::with_capacity(doc.strata.boundary.len());
    for (i, st) in doc.strata.boundary.iter().enumerate() {
        let ptr = format!("/strata/boundary/{i}");
        let base = complex_by_id(&st.complex, format!("{ptr}/complex"))?;
        let group = group_by_id(&st.group, format!("{ptr}/group"))?;
        let data = inclusion_data(&st.inclusion, &format!("{ptr}/inclusion"))?;
        let inclusion = SubgroupInclusion::new(group.clone(), principal_group.clone(), data)
            .map_err(|e| FormatError::new(format!("{ptr}/inclusion"), e.to_string()))?;

        let mut face = Vec::with_capacity(doc.faces[i].cells.len());
        for (j, c) in doc.faces[i].cells.iter().enumerate() {
            let id =
                parse_num::<usize>(c, &format!("/faces/{i}/cells/{j}"), "cell id")?;
            if id >= total.len() {
                return Err(FormatError::new(
                    format!("/faces/{i}/cells/{j}"),
                    format!(
                        "face id {id} is out of range (total complex has {} cells)",
                        total.len()
                    ),
                ));
            }
            face.push(id);
        }

        if doc.fibrations[i].image.len() != face.len() {
            return Err(FormatError::new(
                format!("/fibrations/{i}/image"),
                format!(
                    "{} image entries for a face of {} cells",
                    doc.fibrations[i].image.len(),
                    face.len()
                ),
            ));
        }
        let mut image = Vec::with_capacity(face.len());
        for (j, c) in doc.fibrations[i].image.iter().enumerate() {
            let id = parse_num::<usize>(c, &format!("/fibrations/{i}/image/{j}"), "cell id")?;
            if id >= base.len() {
                return Err(FormatError::new(
                    format!("/fibrations/{i}/image/{j}"),
                    format!("image cell {id} is out of range (base has {} cells)", base.len()),
                ));
            }
            image.push(id);
        }

        strata.push(Stratum {
            name: st.name.clone(),
            class_name: st.class.clone(),
            base,
            group,
            monodromy: Monodromy::trivial(),
            face,
            fibration: CellMap { image },
            inclusion,
        });
    }

    // Monodromy records attach to the principal stratum or a boundary stratum.
    let mut principal_monodromy = Monodromy::trivial();
    for (i, t) in doc.monodromy.iter().enumerate() {
        let ptr = format!("/monodromy/{i}");
        let (base, target_monodromy): (&CellComplex, &mut Monodromy) =
            if t.stratum == "principal" {
                (&total, &mut principal_monodromy)
            } else {
                let idx =
                    parse_num::<usize>(&t.stratum, &format!("{ptr}/stratum"), "stratum index")?;
                if idx >= strata.len() {
                    return Err(FormatError::new(
                        format!("{ptr}/stratum"),
                        format!("stratum index {idx} is out of range ({} strata)", strata.len()),
                    ));
                }
                let st = &mut strata[idx];
                (&st.base, &mut st.monodromy)
            };
        let cell = parse_num::<usize>(&t.cell, &format!("{ptr}/cell"), "cell id")?;
        if cell >= base.len() {
            return Err(FormatError::new(
                format!("{ptr}/cell"),
                format!("cell {cell} is out of range ({} cells)", base.len()),
            ));
        }
        let entry = parse_num::<usize>(&t.entry, &format!("{ptr}/entry"), "boundary entry")?;
        if entry >= base.cell(cell).boundary.len() {
            return Err(FormatError::new(
                format!("{ptr}/entry"),
                format!(
                    "cell {cell} has {} boundary entries",
                    base.cell(cell).boundary.len()
                ),
            ));
        }
        let action = group_action(&t.action, &format!("{ptr}/action"))?;
        target_monodromy.set(cell, entry, action);
    }

    // Triangles.
    let mut triangles = Vec::with_capacity(doc.triangles.len());
    for (i, t) in doc.triangles.iter().enumerate() {
        let ptr = format!("/triangles/{i}");
        let deeper = parse_num::<usize>(&t.deeper, &format!("{ptr}/deeper"), "stratum index")?;
        let shallower =
            parse_num::<usize>(&t.shallower, &format!("{ptr}/shallower"), "stratum index")?;
        for (which, v) in [("deeper", deeper), ("shallower", shallower)] {
            if v >= strata.len() {
                return Err(FormatError::new(
                    format!("{ptr}/{which}"),
                    format!("stratum index {v} is out of range ({} strata)", strata.len()),
                ));
            }
        }
        let mut map = BTreeMap::new();
        for (j, [src, dst]) in t.map.iter().enumerate() {
            let s = parse_num::<usize>(src, &format!("{ptr}/map/{j}/0"), "cell id")?;
            let d = parse_num::<usize>(dst, &format!("{ptr}/map/{j}/1"), "cell id")?;
            if map.insert(s, d).is_some() {
                return Err(FormatError::new(
                    format!("{ptr}/map/{j}/0"),
                    format!("duplicate source cell {s}"),
                ));
            }
        }
        triangles.push(Triangle {
            deeper,
            shallower,
            map,
        });
    }

    Ok(ResolutionSpace {
        name: doc.name,
        total,
        principal_group,
        principal_monodromy,
        strata,
        triangles,
        contractible_strata: doc.contractible,
    })
}

fn inclusion_data(doc: &InclusionDoc, ptr: &str) -> Result<InclusionData, FormatError> {
    Ok(match doc.kind.as_str() {
        "trivial" => InclusionData::Trivial,
        "identity" => InclusionData::Identity,
        "finite-map" => {
            let m = doc.map.as_ref().ok_or_else(|| {
                FormatError::new(format!("{ptr}/map"), "required for kind 'finite-map'")
            })?;
            let mut map = Vec::with_capacity(m.len());
            for (j, v) in m.iter().enumerate() {
                map.push(parse_num::<usize>(v, &format!("{ptr}/map/{j}"), "element")?);
            }
            InclusionData::FiniteMap(map)
        }
        "weights" => {
            let m = doc.matrix.as_ref().ok_or_else(|| {
                FormatError::new(format!("{ptr}/matrix"), "required for kind 'weights'")
            })?;
            InclusionData::WeightRestriction(parse_int_matrix(m, &format!("{ptr}/matrix"))?)
        }
        "factor" => {
            let idx = doc.index.as_deref().ok_or_else(|| {
                FormatError::new(format!("{ptr}/index"), "required for kind 'factor'")
            })?;
            let inner = doc.inner.as_ref().ok_or_else(|| {
                FormatError::new(format!("{ptr}/inner"), "required for kind 'factor'")
            })?;
            InclusionData::Factor {
                index: parse_num(idx, &format!("{ptr}/index"), "factor index")?,
                inner: Box::new(inclusion_data(inner, &format!("{ptr}/inner"))?),
            }
        }
        "componentwise" => {
            let parts = doc.parts.as_ref().ok_or_else(|| {
                FormatError::new(format!("{ptr}/parts"), "required for kind 'componentwise'")
            })?;
            let mut out = Vec::with_capacity(parts.len());
            for (j, p) in parts.iter().enumerate() {
                out.push(inclusion_data(p, &format!("{ptr}/parts/{j}"))?);
            }
            InclusionData::Componentwise(out)
        }
        "extension-normal" => InclusionData::ExtensionNormal,
        other => {
            return Err(FormatError::new(
                format!("{ptr}/kind"),
                format!("unknown inclusion kind '{other}'"),
            ));
        }
    })
}

fn label_action(doc: &LabelDoc, ptr: &str) -> Result<LabelAction, FormatError> {
    Ok(match doc.kind.as_str() {
        "identity" => LabelAction::Identity,
        "weights" => {
            let m = doc.matrix.as_ref().ok_or_else(|| {
                FormatError::new(format!("{ptr}/matrix"), "required for kind 'weights'")
            })?;
            LabelAction::WeightLinear(parse_int_matrix(m, &format!("{ptr}/matrix"))?)
        }
        "perm" => {
            let p = doc.perm.as_ref().ok_or_else(|| {
                FormatError::new(format!("{ptr}/perm"), "required for kind 'perm'")
            })?;
            let mut perm = Vec::with_capacity(p.len());
            for (j, v) in p.iter().enumerate() {
                perm.push(parse_num::<usize>(v, &format!("{ptr}/perm/{j}"), "row index")?);
            }
            LabelAction::RowPerm(perm)
        }
        "product" => {
            let parts = doc.parts.as_ref().ok_or_else(|| {
                FormatError::new(format!("{ptr}/parts"), "required for kind 'product'")
            })?;
            let mut out = Vec::with_capacity(parts.len());
            for (j, p) in parts.iter().enumerate() {
                out.push(label_action(p, &format!("{ptr}/parts/{j}"))?);
            }
            LabelAction::Product(out)
        }
        other => {
            return Err(FormatError::new(
                format!("{ptr}/kind"),
                format!("unknown label action kind '{other}'"),
            ));
        }
    })
}

fn group_action(doc: &ActionDoc, ptr: &str) -> Result<GroupAction, FormatError> {
    Ok(GroupAction {
        on_labels: label_action(&doc.labels, &format!("{ptr}/labels"))?,
        on_lie: parse_rat_matrix(&doc.lie, &format!("{ptr}/lie"))?,
    })
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

/// Serializes a resolution space to the canonical textual form: two-space indentation,
/// fixed member order, trailing newline. `parse_space` round-trips the result, and
/// re-serializing reproduces it byte-identically.
pub fn serialize_space(s: &ResolutionSpace) -> Result<String, FormatError> {
    let mut groups: Vec<(String, GroupDesc, GroupDoc)> = Vec::new();
    let principal_group = register_group(&s.principal_group, &mut groups)?;
    let mut stratum_groups = Vec::with_capacity(s.strata.len());
    for st in &s.strata {
        stratum_groups.push(register_group(&st.group, &mut groups)?);
    }

    let mut complexes: Vec<(String, CellComplex, ComplexDoc)> = Vec::new();
    let total_id = register_complex(&s.total, &mut complexes);
    let mut base_ids = Vec::with_capacity(s.strata.len());
    for st in &s.strata {
        base_ids.push(register_complex(&st.base, &mut complexes));
    }

    let boundary = s
        .strata
        .iter()
        .zip(&base_ids)
        .zip(&stratum_groups)
        .map(|((st, base_id), group_id)| {
            Ok(StratumDoc {
                name: st.name.clone(),
                class: st.class_name.clone(),
                complex: base_id.clone(),
                group: group_id.clone(),
                inclusion: inclusion_doc(st.inclusion.data()),
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;

    let faces = s
        .strata
        .iter()
        .map(|st| FaceDoc {
            cells: st.face.iter().map(|c| c.to_string()).collect(),
        })
        .collect();
    let fibrations = s
        .strata
        .iter()
        .map(|st| FibrationDoc {
            image: st.fibration.image.iter().map(|c| c.to_string()).collect(),
        })
        .collect();

    let mut monodromy = Vec::new();
    push_twists(&mut monodromy, "principal", &s.principal_monodromy);
    for (i, st) in s.strata.iter().enumerate() {
        push_twists(&mut monodromy, &i.to_string(), &st.monodromy);
    }

    let triangles = s
        .triangles
        .iter()
        .map(|t| TriangleDoc {
            deeper: t.deeper.to_string(),
            shallower: t.shallower.to_string(),
            map: t
                .map
                .iter()
                .map(|(src, dst)| [src.to_string(), dst.to_string()])
                .collect(),
        })
        .collect();

    let doc = SpaceDoc {
        name: s.name.clone(),
        groups: groups.into_iter().map(|(_, _, d)| d).collect(),
        complexes: complexes.into_iter().map(|(_, _, d)| d).collect(),
        strata: StrataDoc {
            principal: PrincipalDoc {
                complex: total_id,
                group: principal_group,
            },
            boundary,
        },
        faces,
        fibrations,
        monodromy,
        triangles,
        contractible: s.contractible_strata,
    };
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| FormatError::new("/", format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Registers a group (factors first) and returns its id. Only the documented catalog of
/// groups is expressible in the textual format.
fn register_group(
    g: &GroupDesc,
    registry: &mut Vec<(String, GroupDesc, GroupDoc)>,
) -> Result<String, FormatError> {
    if let Some((id, _, _)) = registry.iter().find(|(_, known, _)| known == g) {
        return Ok(id.clone());
    }
    let make = |registry: &Vec<_>, kind: &str| GroupDoc {
        id: format!("g{}", registry.len()),
        kind: kind.to_string(),
        rank: None,
        order: None,
        degree: None,
        factors: None,
    };
    let doc = match g {
        GroupDesc::Torus(n) => {
            if *n == 0 {
                make(registry, "trivial")
            } else {
                let mut d = make(registry, "torus");
                d.rank = Some(n.to_string());
                d
            }
        }
        GroupDesc::Finite(fg) => finite_doc(fg, registry)?,
        GroupDesc::Product(factors) => {
            let ids = factors
                .iter()
                .map(|f| register_group(f, registry))
                .collect::<Result<Vec<_>, _>>()?;
            let mut d = make(registry, "product");
            d.factors = Some(ids);
            d
        }
        GroupDesc::Extension(_) => {
            if *g == GroupDesc::circle_semidirect_z2() {
                make(registry, "circle-semidirect-z2")
            } else {
                return Err(FormatError::new(
                    "/groups",
                    format!(
                        "group '{}' is outside the serializable catalog",
                        g.display_name()
                    ),
                ));
            }
        }
    };
    let id = doc.id.clone();
    registry.push((id.clone(), g.clone(), doc));
    Ok(id)
}

fn finite_doc(
    fg: &FiniteGroup,
    registry: &[(String, GroupDesc, GroupDoc)],
) -> Result<GroupDoc, FormatError> {
    let base = |kind: &str| GroupDoc {
        id: format!("g{}", registry.len()),
        kind: kind.to_string(),
        rank: None,
        order: None,
        degree: None,
        factors: None,
    };
    if *fg == trivial_group() {
        return Ok(base("trivial"));
    }
    if *fg == cyclic(fg.order()) {
        let mut d = base("cyclic");
        d.order = Some(fg.order().to_string());
        return Ok(d);
    }
    for n in 1..=6usize {
        if (1..=n).product::<usize>() == fg.order() && *fg == symmetric(n) {
            let mut d = base("symmetric");
            d.degree = Some(n.to_string());
            return Ok(d);
        }
    }
    if fg.order() % 2 == 0 && fg.order() >= 6 && *fg == dihedral(fg.order() / 2) {
        let mut d = base("dihedral");
        d.order = Some((fg.order() / 2).to_string());
        return Ok(d);
    }
    Err(FormatError::new(
        "/groups",
        format!("finite group '{}' is outside the serializable catalog", fg.name()),
    ))
}

fn register_complex(
    c: &CellComplex,
    registry: &mut Vec<(String, CellComplex, ComplexDoc)>,
) -> String {
    if let Some((id, _, _)) = registry.iter().find(|(_, known, _)| known == c) {
        return id.clone();
    }
    let id = format!("x{}", registry.len());
    let doc = ComplexDoc {
        id: id.clone(),
        cells: c
            .cells()
            .iter()
            .map(|cell| CellDoc {
                dim: cell.dim.to_string(),
                boundary: cell
                    .boundary
                    .iter()
                    .map(|(f, inc)| [f.to_string(), inc.to_string()])
                    .collect(),
            })
            .collect(),
    };
    registry.push((id.clone(), c.clone(), doc));
    id
}

fn push_twists(out: &mut Vec<TwistDoc>, stratum: &str, m: &Monodromy) {
    for (&(cell, entry), action) in m.iter() {
        out.push(TwistDoc {
            stratum: stratum.to_string(),
            cell: cell.to_string(),
            entry: entry.to_string(),
            action: ActionDoc {
                labels: label_doc(&action.on_labels),
                lie: rat_matrix_doc(&action.on_lie),
            },
        });
    }
}

fn label_doc(a: &LabelAction) -> LabelDoc {
    let base = |kind: &str| LabelDoc {
        kind: kind.to_string(),
        matrix: None,
        perm: None,
        parts: None,
    };
    match a {
        LabelAction::Identity => base("identity"),
        LabelAction::WeightLinear(m) => {
            let mut d = base("weights");
            d.matrix = Some(int_matrix_doc(m));
            d
        }
        LabelAction::RowPerm(p) => {
            let mut d = base("perm");
            d.perm = Some(p.iter().map(|v| v.to_string()).collect());
            d
        }
        LabelAction::Product(parts) => {
            let mut d = base("product");
            d.parts = Some(parts.iter().map(label_doc).collect());
            d
        }
    }
}

fn inclusion_doc(d: &InclusionData) -> InclusionDoc {
    let base = |kind: &str| InclusionDoc {
        kind: kind.to_string(),
        map: None,
        matrix: None,
        index: None,
        inner: None,
        parts: None,
    };
    match d {
        InclusionData::Trivial => base("trivial"),
        InclusionData::Identity => base("identity"),
        InclusionData::FiniteMap(m) => {
            let mut doc = base("finite-map");
            doc.map = Some(m.iter().map(|v| v.to_string()).collect());
            doc
        }
        InclusionData::WeightRestriction(m) => {
            let mut doc = base("weights");
            doc.matrix = Some(int_matrix_doc(m));
            doc
        }
        InclusionData::Factor { index, inner } => {
            let mut doc = base("factor");
            doc.index = Some(index.to_string());
            doc.inner = Some(Box::new(inclusion_doc(inner)));
            doc
        }
        InclusionData::Componentwise(parts) => {
            let mut doc = base("componentwise");
            doc.parts = Some(parts.iter().map(inclusion_doc).collect());
            doc
        }
        InclusionData::ExtensionNormal => base("extension-normal"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use equires_core::resolution::{
        build_free_action, build_mobius_example, build_sphere_rotation, build_trivial_action,
        circle_cells, circle_sphere_inclusion, point, validate_resolution, z2_sphere_inclusion,
    };
    use equires_core::theories::equivariant_cohomology;

    fn spaces() -> Vec<ResolutionSpace> {
        vec![
            build_sphere_rotation(circle_sphere_inclusion()).unwrap(),
            build_sphere_rotation(z2_sphere_inclusion()).unwrap(),
            build_mobius_example(),
            build_trivial_action(GroupDesc::circle(), point()),
            build_free_action(GroupDesc::Finite(cyclic(2)), circle_cells(2)),
        ]
    }

    #[test]
    fn round_trip_is_stable_and_preserves_the_theories() {
        for s in spaces() {
            let text = serialize_space(&s).unwrap();
            let back = parse_space(&text).unwrap();
            assert_eq!(serialize_space(&back).unwrap(), text, "{}", s.name);
            assert!(validate_resolution(&back).is_valid(), "{}", s.name);
            assert_eq!(
                equivariant_cohomology(&back, 4).unwrap().dims,
                equivariant_cohomology(&s, 4).unwrap().dims,
                "{}",
                s.name
            );
        }
    }

    #[test]
    fn dangling_face_id_points_at_the_entry() {
        let s = build_sphere_rotation(circle_sphere_inclusion()).unwrap();
        let text = serialize_space(&s).unwrap();
        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        doc["faces"][0]["cells"][0] = serde_json::Value::String("99".into());
        let err = parse_space(&doc.to_string()).unwrap_err();
        assert_eq!(err.pointer, "/faces/0/cells/0");
        assert!(err.message.contains("out of range"), "{}", err.message);
    }

    #[test]
    fn unknown_ids_and_kinds_are_pointered() {
        let s = build_sphere_rotation(circle_sphere_inclusion()).unwrap();
        let text = serialize_space(&s).unwrap();

        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        doc["strata"]["boundary"][1]["group"] = serde_json::Value::String("nope".into());
        let err = parse_space(&doc.to_string()).unwrap_err();
        assert_eq!(err.pointer, "/strata/boundary/1/group");

        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        doc["groups"][0]["kind"] = serde_json::Value::String("lie".into());
        let err = parse_space(&doc.to_string()).unwrap_err();
        assert_eq!(err.pointer, "/groups/0/kind");
    }

    #[test]
    fn syntax_errors_report_a_position() {
        let err = parse_space("{\"name\": ").unwrap_err();
        assert_eq!(err.pointer, "/");
        assert!(err.message.contains("line"), "{}", err.message);
    }
}
