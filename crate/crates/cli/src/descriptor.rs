//! Group descriptors: the on-disk format and load-time verification.
//!
//! A descriptor is a TOML document:
//!
//! ```toml
//! id = "S3"                          # optional; defaults to the file stem
//! degree = 3
//! generators = [[2, 1, 3], "(1 2 3)"] # image arrays, or cycle strings
//! expected_order = 6                 # optional, checked at load
//! tags = ["soluble"]                 # optional, checked at load
//! ```
//!
//! Image arrays are 1-based and canonical; cycle strings are accepted on
//! input and normalized to image arrays.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use commcrit::structure::{is_nilpotent, is_soluble};
use commcrit::{PermGroup, Permutation};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Soluble,
    Insoluble,
    Nilpotent,
    Abelian,
}

impl Tag {
    pub const ALL: [Tag; 4] = [Tag::Soluble, Tag::Insoluble, Tag::Nilpotent, Tag::Abelian];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Soluble => "soluble",
            Tag::Insoluble => "insoluble",
            Tag::Nilpotent => "nilpotent",
            Tag::Abelian => "abelian",
        }
    }

    fn holds(self, g: &PermGroup) -> Result<bool, commcrit::GroupError> {
        Ok(match self {
            Tag::Soluble => is_soluble(g)?,
            Tag::Insoluble => !is_soluble(g)?,
            Tag::Nilpotent => is_nilpotent(g)?,
            Tag::Abelian => g.is_abelian(),
        })
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Tag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown tag `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "path")]
pub enum Source {
    Builtin,
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDescriptor {
    pub id: String,
    pub source: Source,
    pub degree: usize,
    /// 1-based image arrays.
    pub generators: Vec<Vec<usize>>,
    pub expected_order: Option<u64>,
    pub tags: Vec<Tag>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawGenerator {
    Images(Vec<usize>),
    Cycles(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDescriptor {
    id: Option<String>,
    degree: usize,
    generators: Vec<RawGenerator>,
    expected_order: Option<u64>,
    #[serde(default)]
    tags: Vec<Tag>,
}

#[derive(Serialize)]
struct WrittenDescriptor<'a> {
    id: &'a str,
    degree: usize,
    generators: &'a [Vec<usize>],
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_order: Option<u64>,
    #[serde(skip_serializing_if = "<[Tag]>::is_empty")]
    tags: &'a [Tag],
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |nl| before.len() - nl - 1) + 1;
    (line, column)
}

/// Parses descriptor text. `path` is used for error positions and the
/// default id.
pub fn parse_descriptor(text: &str, path: &Path) -> Result<GroupDescriptor, CliError> {
    let raw: RawDescriptor = toml::from_str(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map_or((1, 1), |span| line_column(text, span.start));
        CliError::Parse {
            path: path.to_path_buf(),
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let id = raw.id.unwrap_or_else(|| {
        path.file_stem()
            .map_or_else(|| "group".to_string(), |s| s.to_string_lossy().into_owned())
    });
    let generators = raw
        .generators
        .into_iter()
        .map(|g| match g {
            RawGenerator::Images(v) => Ok(v),
            RawGenerator::Cycles(s) => Permutation::parse_cycles(raw.degree, &s)
                .map(|p| p.images_one_based())
                .map_err(|e| CliError::InvalidPermutation {
                    id: id.clone(),
                    message: e.to_string(),
                }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupDescriptor {
        id,
        source: Source::File(path.to_path_buf()),
        degree: raw.degree,
        generators,
        expected_order: raw.expected_order,
        tags: raw.tags,
    })
}

pub fn read_descriptor(path: &Path) -> Result<GroupDescriptor, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_descriptor(&text, path)
}

/// Canonical descriptor text (image arrays only).
pub fn write_descriptor(d: &GroupDescriptor) -> String {
    toml::to_string(&WrittenDescriptor {
        id: &d.id,
        degree: d.degree,
        generators: &d.generators,
        expected_order: d.expected_order,
        tags: &d.tags,
    })
    .expect("descriptor serializes")
}

/// Descriptor for an existing group, with its order recorded.
pub fn describe(id: &str, g: &PermGroup) -> GroupDescriptor {
    GroupDescriptor {
        id: id.to_string(),
        source: Source::Builtin,
        degree: g.degree(),
        generators: g.generators().iter().map(Permutation::images_one_based).collect(),
        expected_order: Some(g.order()),
        tags: Vec::new(),
    }
}

/// A descriptor turned into a verified group.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub descriptor: GroupDescriptor,
    pub group: PermGroup,
    pub soluble: bool,
}

impl LoadedGroup {
    pub fn id(&self) -> &str {
        &self.descriptor.id
    }

    pub fn has_tag(&self, tag: Tag) -> Result<bool, CliError> {
        if let Some(answer) = match tag {
            Tag::Soluble => Some(self.soluble),
            Tag::Insoluble => Some(!self.soluble),
            _ => None,
        } {
            return Ok(answer);
        }
        tag.holds(&self.group)
            .map_err(|e| CliError::group(self.id(), e))
    }
}

/// Builds the group, checking the images, the expected order and every
/// declared tag.
pub fn load(descriptor: GroupDescriptor) -> Result<LoadedGroup, CliError> {
    let id = descriptor.id.clone();
    let invalid = |message: String| CliError::InvalidPermutation {
        id: id.clone(),
        message,
    };
    let mut gens = Vec::with_capacity(descriptor.generators.len());
    for images in &descriptor.generators {
        if images.len() != descriptor.degree {
            return Err(invalid(format!(
                "{} images given for degree {}",
                images.len(),
                descriptor.degree
            )));
        }
        gens.push(Permutation::from_images(images).map_err(|e| invalid(e.to_string()))?);
    }
    let group = PermGroup::new(descriptor.degree, gens).map_err(|e| invalid(e.to_string()))?;
    if let Some(expected) = descriptor.expected_order {
        if group.order() != expected {
            return Err(CliError::OrderMismatch {
                id,
                expected,
                actual: group.order(),
            });
        }
    }
    for &tag in &descriptor.tags {
        if !tag.holds(&group).map_err(|e| CliError::group(&id, e))? {
            return Err(CliError::TagMismatch {
                id,
                tag: tag.to_string(),
            });
        }
    }
    let soluble = is_soluble(&group).map_err(|e| CliError::group(&id, e))?;
    Ok(LoadedGroup {
        descriptor,
        group,
        soluble,
    })
}
