#pragma once

#include <string>

#include "json.hpp"
#include "towerlift/applications.hpp"

namespace towerlift {

using Json = nlohmann::json;

// Certificates are JSON envelopes
//   {"format": 1, "kind": ..., "tower": {...}, "payload": {...}, "digest": sha256}
// with keys sorted and no timestamps, so equal inputs give equal bytes.

Json tower_json(const Ring& ring);
RingPtr tower_from_json(const Json& j);

/// Element text that parse_element reads back exactly (f printed by name).
std::string element_text(const Element& e);

Json level_json(const Level& level);
Level level_from_json(const Json& j);

Json automorphism_json(const Ring& ring, const Automorphism& theta);
Automorphism automorphism_from_json(const Ring& ring, const Json& j);

Json lift_payload(const LiftCertificate& cert);
LiftCertificate lift_from_payload(const RingPtr& ring, const Json& j);

Json certificate_json(const LiftCertificate& cert);
Json certificate_json(const SetTheoreticCertificate& cert);
Json certificate_json(const UnimodularCertificate& cert);
/// `ideal` is the ideal the witness was computed for.
Json certificate_json(const IdealHandle& ideal, const NormalizationWitness& w);

/// Hex SHA-256 of the envelope without its digest field.
std::string certificate_digest(const Json& envelope);

/// Replays the transcripts of a certificate (first failure reported), then
/// compares the stored digest when check_digest is set.
Verdict verify_certificate(const Json& envelope, bool check_digest = true);

/// Canonical bytes of a JSON document.
std::string canonical_dump(const Json& j);

}  // namespace towerlift
