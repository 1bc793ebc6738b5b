#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "utl/approx.hpp"
#include "utl/effective.hpp"
#include "utl/field.hpp"
#include "utl/twistform.hpp"
#include "utl/units.hpp"

namespace utl {

inline constexpr int kSchemaVersion = 1;

// Field definition files: {"coeffs": [a0..ad], "attest_irreducible": bool,
// "identity_embedding": optional index}.
FieldPtr field_from_json(const nlohmann::json& j);
FieldPtr load_field_file(const std::string& path);
nlohmann::json field_to_json(const NumberField& field);

// Elements serialize as arrays of "p/q" strings.
FieldElement element_from_json(FieldPtr field, const nlohmann::json& j);
nlohmann::json element_to_json(const FieldElement& x);

// Enclosures render as [lo, hi] decimal strings (outward) for humans plus an
// exact hex pair so that reports re-parse into identical records.
nlohmann::json ball_to_json(const CertifiedReal& x, int digits = 17);
CertifiedReal ball_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(const CertifiedComplex& z, int digits = 17);

nlohmann::json record_to_json(const ApproxRecord& rec, int digits = 17);
ApproxRecord record_from_json(const nlohmann::json& j);
bool records_identical(const ApproxRecord& a, const ApproxRecord& b);

// CSV schema: n,p,q,lhs_lo,lhs_hi,rhs_lo,rhs_hi,quality_lo,quality_hi,verdict.
std::string records_to_csv(const std::vector<ApproxRecord>& records, int digits = 17,
                           bool with_timestamp = true);
std::string records_to_json_text(const std::vector<ApproxRecord>& records, int digits = 17,
                                 bool with_timestamp = true);
std::vector<ApproxRecord> records_from_json_text(const std::string& text);

nlohmann::json hurwitz_to_json(const std::vector<HurwitzRecord>& records, int digits = 17);
nlohmann::json pisot_to_json(const PisotCertificate& cert);
nlohmann::json cz_to_json(const CzRecord& rec, int digits = 17);
nlohmann::json thue_to_json(const TwistedForm& form, const Int& k, long box,
                            const std::vector<ThueSolution>& sols);
nlohmann::json family_enum_to_json(const std::vector<FamilyEnumCell>& cells);
nlohmann::json exponents_to_json(const ExponentVector& ev);
nlohmann::json sequence_to_json(const BoundedUnitSequence& seq, int digits = 17);
nlohmann::json effective_report_to_json(const EffectiveGapReport& rep, int digits = 17);

std::string timestamp_iso();
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace utl
