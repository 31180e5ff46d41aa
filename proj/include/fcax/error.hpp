#pragma once

#include <stdexcept>
#include <string>

namespace fcax {

enum class Errc {
    MalformedXml,
    MixedContent,
    EmptyDocument,
    UnknownObject,
    UnknownAttribute,
    DuplicateObject,
    InvalidConcept,
    NotAParentNode,
    MissingScale,
    FunctionalityViolation,
    GrammarError,
    UnsupportedFeature,
    PathNotFound,
    EmptyIntent,
    UnknownTarget,
    BadIndexFile,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::MalformedXml: return "MalformedXml";
    case Errc::MixedContent: return "MixedContent";
    case Errc::EmptyDocument: return "EmptyDocument";
    case Errc::UnknownObject: return "UnknownObject";
    case Errc::UnknownAttribute: return "UnknownAttribute";
    case Errc::DuplicateObject: return "DuplicateObject";
    case Errc::InvalidConcept: return "InvalidConcept";
    case Errc::NotAParentNode: return "NotAParentNode";
    case Errc::MissingScale: return "MissingScale";
    case Errc::FunctionalityViolation: return "FunctionalityViolation";
    case Errc::GrammarError: return "GrammarError";
    case Errc::UnsupportedFeature: return "UnsupportedFeature";
    case Errc::PathNotFound: return "PathNotFound";
    case Errc::EmptyIntent: return "EmptyIntent";
    case Errc::UnknownTarget: return "UnknownTarget";
    case Errc::BadIndexFile: return "BadIndexFile";
    case Errc::IoError: return "IoError";
    }
    return "Error";
}

} // namespace fcax
