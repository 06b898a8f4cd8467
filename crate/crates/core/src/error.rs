use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: OBJ parse error: {msg}")]
    ObjParse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("mesh has no vertices or faces")]
    EmptyMesh,

    #[error("face index {index} out of range (mesh has {vertex_count} vertices)")]
    FaceIndexOutOfRange { index: usize, vertex_count: usize },

    #[error("mesh has zero total surface area")]
    ZeroAreaMesh,

    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("point cloud contains non-finite coordinates")]
    NonFinitePoint,

    #[error("point cloud has zero extent; cannot normalize or align")]
    DegenerateCloud,

    #[error("point sets must have equal sizes (got {left} and {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("SVG parse error: {0}")]
    SvgParse(String),

    #[error("unsupported path command '{command}' (element {element})")]
    UnsupportedPathCommand { command: char, element: usize },

    #[error("unsupported drawable element <{name}> (element {element})")]
    UnsupportedElement { name: String, element: usize },

    #[error("stroke needs at least 2 points and a positive width")]
    InvalidStroke,

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("embedding rows are not unit-normalized")]
    UnnormalizedRows,

    #[error("shape id '{0}' not found")]
    ShapeNotFound(String),

    #[error("sigma is zero; the distance subset must contain a shape at positive distance")]
    ZeroSigma,

    #[error("mask must contain at least one {0} pixel")]
    UniformMask(&'static str),

    #[error("label sampling exhausted {0} redraw attempts")]
    RetryExhausted(usize),

    #[error("sparse labels must include at least one foreground and one background label")]
    MissingLabelClass,

    #[error("label ({row},{col}) is outside the {h}x{w} grid")]
    LabelOutOfBounds {
        row: usize,
        col: usize,
        h: usize,
        w: usize,
    },

    #[error("{path}: PGM parse error: {msg}")]
    PgmParse { path: PathBuf, msg: String },

    #[error("{path}:{line}: point cloud parse error: {msg}")]
    XyzParse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("JSON error on {path}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
