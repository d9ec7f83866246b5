//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("symbol `{0}` is not in the source alphabet")]
    SymbolNotInSource(String),
    #[error("symbol `{0}` is not in the alphabet")]
    SymbolNotInAlphabet(String),
    #[error("alphabet must be nonempty and free of duplicates (offending symbol `{0}`)")]
    BadAlphabet(String),
    #[error("cannot tokenize `{0}` over the alphabet")]
    Unparseable(String),
    #[error("morphism is not an endomorphism (source and target alphabets differ)")]
    NotAnEndomorphism,
    #[error("morphism erases `{0}` (empty image)")]
    ErasingMorphism(String),
    #[error("morphism is missing an image for `{0}`")]
    IncompleteMorphism(String),
    #[error("morphism is not alphabetic (image of `{0}` has length != 1)")]
    NotAlphabetic(String),
    #[error("factor set did not stabilize within {0} iterations")]
    NoStabilization(usize),
    #[error("no power of the morphism up to exponent {0} fixes the first letter of any symbol")]
    NoPeriodicLetter(usize),
    #[error("horizon {available} is insufficient, need at least {required}")]
    InsufficientHorizon { required: usize, available: usize },
    #[error("word `{0}` is not in the language")]
    NotInLanguage(String),
    #[error("language is not factorial within horizon: `{0}` stored but factor `{1}` missing")]
    NotFactorial(String, String),
    #[error("language is not extendable within horizon at `{0}`")]
    NotExtendable(String),
    #[error("not a suffix code: `{0}` is a suffix of `{1}`")]
    NotASuffixCode(String, String),
    #[error("not a prefix code: `{0}` is a prefix of `{1}`")]
    NotAPrefixCode(String, String),
    #[error("not a bifix code")]
    NotBifix,
    #[error("code is not X-complete; witness extension `{0}` misses the code")]
    NotComplete(String),
    #[error("empty word is not allowed in a code")]
    EmptyWordInCode,
    #[error("diameter of a disconnected graph is undefined")]
    DiameterOfDisconnected,
    #[error("multiplicity is defined for order-1 extension graphs only")]
    NotOrderOne,
    #[error("return enumeration for `{0}` was cut by the horizon")]
    IncompleteReturns(String),
    #[error("operation requires a template-defined language")]
    NotTemplateLanguage,
    #[error("sliding block map has no image for factor `{0}`")]
    PartialMap(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
