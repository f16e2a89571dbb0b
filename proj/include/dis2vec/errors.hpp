#pragma once

#include <stdexcept>
#include <string>

namespace dis2vec {

// Bad inputs: malformed files, empty corpora, impossible restrictions.
// The CLI maps these to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyCorpusError : DataError {
    using DataError::DataError;
};

struct ParseError : DataError {
    using DataError::DataError;
};

struct InvalidCategoryError : DataError {
    using DataError::DataError;
};

struct EmptyVocabularyError : DataError {
    using DataError::DataError;
};

struct EmptySupportError : DataError {
    using DataError::DataError;
};

struct ZeroVectorError : DataError {
    using DataError::DataError;
};

struct DiseaseNotInEmbeddingsError : DataError {
    using DataError::DataError;
};

struct NoCandidatesError : DataError {
    using DataError::DataError;
};

struct InvalidSpecError : DataError {
    using DataError::DataError;
};

// NaN/Inf detected during training. The CLI maps this to exit code 3.
struct NonFiniteUpdateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad command-line usage. The CLI maps this to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dis2vec
