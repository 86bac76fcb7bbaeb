#include "specgeo/error.hpp"

namespace specgeo {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::input_size: return "input-size";
        case ErrorCode::data: return "data";
        case ErrorCode::parameter: return "parameter";
        case ErrorCode::domain: return "domain";
        case ErrorCode::geometry: return "geometry";
        case ErrorCode::topology: return "topology";
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::stratification: return "stratification";
        case ErrorCode::training: return "training";
        case ErrorCode::kind: return "kind";
        case ErrorCode::label: return "label";
        case ErrorCode::ingest: return "ingest";
        case ErrorCode::schema: return "schema";
        case ErrorCode::io: return "io";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

}  // namespace specgeo
