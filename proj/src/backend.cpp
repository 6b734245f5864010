#include "adasolve/backend.hpp"

namespace adasolve {

std::string_view to_string(RequestPurpose purpose) {
    return purpose == RequestPurpose::solve ? "solve" : "fallback";
}

std::string_view to_string(BackendErrorKind kind) {
    switch (kind) {
        case BackendErrorKind::unknown_model: return "unknown model";
        case BackendErrorKind::missing_fixture: return "missing fixture";
        case BackendErrorKind::transport: return "transport failure";
        case BackendErrorKind::http_status: return "http error";
        case BackendErrorKind::malformed_response: return "malformed response";
        case BackendErrorKind::accounting: return "accounting error";
        case BackendErrorKind::credential: return "credential error";
    }
    return "backend error";
}

}  // namespace adasolve
