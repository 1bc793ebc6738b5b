#include "utl/io.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "utl/error.hpp"

namespace utl {

using nlohmann::json;

FieldPtr field_from_json(const json& j) {
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
        raise(ErrorKind::IoError, "field file: missing \"coeffs\" array");
    std::vector<Int> coeffs;
    for (const auto& c : j["coeffs"]) {
        if (c.is_number_integer())
            coeffs.emplace_back(c.get<long>());
        else if (c.is_string())
            coeffs.push_back(int_from_string(c.get<std::string>()));
        else
            raise(ErrorKind::IoError, "field file: coefficients must be integers or strings");
    }
    FieldOptions opts;
    opts.attest_irreducible = j.value("attest_irreducible", false);
    if (j.contains("identity_embedding") && !j["identity_embedding"].is_null())
        opts.identity_embedding = j["identity_embedding"].get<unsigned>();
    return NumberField::create(coeffs, opts);
}

FieldPtr load_field_file(const std::string& path) {
    json j = json::parse(read_text_file(path));
    return field_from_json(j);
}

json field_to_json(const NumberField& field) {
    json j;
    j["schema_version"] = kSchemaVersion;
    json coeffs = json::array();
    for (const auto& c : field.coefficients_descending()) coeffs.push_back(int_to_string(c));
    j["coeffs"] = coeffs;
    j["degree"] = field.degree();
    j["signature"] = {field.real_embeddings(), field.complex_pairs()};
    j["identity_embedding"] = field.identity_index();
    j["polynomial"] = field.describe();
    return j;
}

FieldElement element_from_json(FieldPtr field, const json& j) {
    if (!j.is_array()) raise(ErrorKind::IoError, "element must be an array of \"p/q\" strings");
    std::vector<Rational> coords;
    for (const auto& c : j) {
        if (c.is_number_integer())
            coords.emplace_back(c.get<long>());
        else
            coords.push_back(rational_from_string(c.get<std::string>()));
    }
    return FieldElement(std::move(field), std::move(coords));
}

json element_to_json(const FieldElement& x) {
    json j = json::array();
    for (const auto& c : x.coords()) j.push_back(rational_to_string(c));
    return j;
}

json ball_to_json(const CertifiedReal& x, int digits) {
    json j;
    j["lo"] = x.decimal_lo(digits);
    j["hi"] = x.decimal_hi(digits);
    j["center_hex"] = x.hex_center();
    j["radius_hex"] = x.hex_radius();
    j["prec"] = x.precision();
    return j;
}

CertifiedReal ball_from_json(const json& j) {
    return CertifiedReal::from_hex(j.at("center_hex").get<std::string>(),
                                   j.at("radius_hex").get<std::string>(),
                                   j.at("prec").get<unsigned>());
}

json complex_to_json(const CertifiedComplex& z, int digits) {
    json j;
    j["re"] = ball_to_json(z.re(), digits);
    j["im"] = ball_to_json(z.im(), digits);
    return j;
}

json record_to_json(const ApproxRecord& rec, int digits) {
    json j;
    j["n"] = rec.unit_label;
    json exps = json::array();
    for (long e : rec.unit_exponents) exps.push_back(e);
    j["unit_exponents"] = exps;
    j["p"] = int_to_string(rec.p);
    j["q"] = int_to_string(rec.q);
    j["lhs"] = ball_to_json(rec.lhs, digits);
    j["rhs"] = ball_to_json(rec.rhs, digits);
    j["quality"] = ball_to_json(rec.quality, digits);
    j["verdict"] = verdict_name(rec.verdict);
    j["is_minimum"] = rec.is_minimum;
    return j;
}

ApproxRecord record_from_json(const json& j) {
    ApproxRecord rec;
    rec.unit_label = j.at("n").get<std::string>();
    for (const auto& e : j.at("unit_exponents")) rec.unit_exponents.push_back(e.get<long>());
    rec.p = int_from_string(j.at("p").get<std::string>());
    rec.q = int_from_string(j.at("q").get<std::string>());
    rec.lhs = ball_from_json(j.at("lhs"));
    rec.rhs = ball_from_json(j.at("rhs"));
    rec.quality = ball_from_json(j.at("quality"));
    rec.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    rec.is_minimum = j.value("is_minimum", false);
    return rec;
}

bool records_identical(const ApproxRecord& a, const ApproxRecord& b) {
    return a.unit_label == b.unit_label && a.unit_exponents == b.unit_exponents && a.p == b.p &&
           a.q == b.q && identical(a.lhs, b.lhs) && identical(a.rhs, b.rhs) &&
           identical(a.quality, b.quality) && a.verdict == b.verdict &&
           a.is_minimum == b.is_minimum;
}

std::string records_to_csv(const std::vector<ApproxRecord>& records, int digits,
                           bool with_timestamp) {
    std::ostringstream os;
    os << "# unit-twist-lab records, schema_version " << kSchemaVersion << "\n";
    if (with_timestamp) os << "# generated_at " << timestamp_iso() << "\n";
    os << "n,p,q,lhs_lo,lhs_hi,rhs_lo,rhs_hi,quality_lo,quality_hi,verdict\n";
    for (const auto& rec : records) {
        os << rec.unit_label << "," << int_to_string(rec.p) << "," << int_to_string(rec.q) << ","
           << rec.lhs.decimal_lo(digits) << "," << rec.lhs.decimal_hi(digits) << ","
           << rec.rhs.decimal_lo(digits) << "," << rec.rhs.decimal_hi(digits) << ","
           << rec.quality.decimal_lo(digits) << "," << rec.quality.decimal_hi(digits) << ","
           << verdict_name(rec.verdict) << "\n";
    }
    return os.str();
}

std::string records_to_json_text(const std::vector<ApproxRecord>& records, int digits,
                                 bool with_timestamp) {
    json j;
    j["schema_version"] = kSchemaVersion;
    if (with_timestamp) j["generated_at"] = timestamp_iso();
    json arr = json::array();
    for (const auto& rec : records) arr.push_back(record_to_json(rec, digits));
    j["records"] = arr;
    return j.dump(2) + "\n";
}

std::vector<ApproxRecord> records_from_json_text(const std::string& text) {
    json j = json::parse(text);
    std::vector<ApproxRecord> out;
    for (const auto& r : j.at("records")) out.push_back(record_from_json(r));
    return out;
}

json hurwitz_to_json(const std::vector<HurwitzRecord>& records, int digits) {
    json arr = json::array();
    for (const auto& rec : records) {
        json j;
        j["p"] = int_to_string(rec.p);
        j["q"] = int_to_string(rec.q);
        j["lhs"] = ball_to_json(rec.lhs, digits);
        j["rhs"] = ball_to_json(rec.rhs, digits);
        j["verdict"] = verdict_name(rec.verdict);
        j["witness"] = rec.witness;
        arr.push_back(std::move(j));
    }
    json out;
    out["schema_version"] = kSchemaVersion;
    out["records"] = arr;
    return out;
}

json pisot_to_json(const PisotCertificate& cert) {
    json j;
    j["pseudo_pisot"] = cert.is_pseudo_pisot;
    j["degree"] = cert.degree;
    j["trace"] = rational_to_string(cert.trace);
    j["trace_integral"] = cert.trace_integral;
    j["identity_modulus_gt_one"] = cert.identity_modulus_gt_one;
    j["others_modulus_lt_one"] = cert.others_modulus_lt_one;
    return j;
}

json cz_to_json(const CzRecord& rec, int digits) {
    json j;
    j["q"] = int_to_string(rec.q);
    j["delta"] = rec.delta;
    j["exact_integer"] = rec.exact_integer;
    j["abs_gt_one"] = rec.abs_gt_one;
    j["pseudo_pisot"] = rec.pisot;
    j["applies"] = rec.applies;
    j["lhs"] = ball_to_json(rec.lhs, digits);
    j["rhs"] = ball_to_json(rec.rhs, digits);
    j["verdict"] = verdict_name(rec.verdict);
    return j;
}

json thue_to_json(const TwistedForm& form, const Int& k, long box,
                  const std::vector<ThueSolution>& sols) {
    json j;
    j["schema_version"] = kSchemaVersion;
    json coeffs = json::array();
    for (const auto& c : form.coeffs) coeffs.push_back(int_to_string(c));
    j["form"] = coeffs;
    j["unit"] = form.unit_label;
    j["k"] = int_to_string(k);
    j["box"] = box;
    json arr = json::array();
    for (const auto& s : sols) {
        json sj;
        sj["x"] = int_to_string(s.x);
        sj["y"] = int_to_string(s.y);
        sj["xy_zero"] = s.xy_zero;
        arr.push_back(std::move(sj));
    }
    j["solutions"] = arr;
    return j;
}

json family_enum_to_json(const std::vector<FamilyEnumCell>& cells) {
    json arr = json::array();
    for (const auto& cell : cells) {
        json j;
        j["unit"] = cell.unit_label;
        j["k"] = int_to_string(cell.k);
        if (!cell.error.empty()) {
            j["error"] = cell.error;
        } else {
            j["count"] = cell.solutions.size();
            json sols = json::array();
            for (const auto& s : cell.solutions) {
                json sj;
                sj["x"] = int_to_string(s.x);
                sj["y"] = int_to_string(s.y);
                sj["xy_zero"] = s.xy_zero;
                sols.push_back(std::move(sj));
            }
            j["solutions"] = sols;
        }
        arr.push_back(std::move(j));
    }
    json out;
    out["schema_version"] = kSchemaVersion;
    out["cells"] = arr;
    return out;
}

json exponents_to_json(const ExponentVector& ev) {
    json j;
    json arr = json::array();
    for (const auto& b : ev.exponents) arr.push_back(int_to_string(b));
    j["exponents"] = arr;
    j["torsion_ok"] = ev.torsion_ok;
    j["torsion"] = ev.torsion_text;
    return j;
}

json sequence_to_json(const BoundedUnitSequence& seq, int digits) {
    json out;
    out["schema_version"] = kSchemaVersion;
    json acc = json::array();
    for (const auto& t : seq.accepted) {
        json j;
        j["a"] = int_to_string(t.a);
        j["b"] = int_to_string(t.b);
        j["log_value"] = ball_to_json(t.log_value, digits);
        j["value"] = element_to_json(t.value);
        acc.push_back(std::move(j));
    }
    out["accepted"] = acc;
    json skip = json::array();
    for (const auto& t : seq.skipped) {
        json j;
        j["a"] = int_to_string(t.a);
        j["b"] = int_to_string(t.b);
        j["log_value"] = ball_to_json(t.log_value, digits);
        j["note"] = "outside [1/2, 2]";
        skip.push_back(std::move(j));
    }
    out["skipped"] = skip;
    return out;
}

json effective_report_to_json(const EffectiveGapReport& rep, int digits) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["skipped"] = rep.skipped;
    j["zero_p"] = rep.zero_p;
    j["gap_lower_bound"] = ball_to_json(rep.gap_lower_bound, digits);
    j["direct_gap"] = ball_to_json(rep.direct_gap, digits);
    j["sanity"] = verdict_name(rep.sanity);
    j["lambda_inequality"] = verdict_name(rep.lambda_inequality);
    j["kappa4_source"] = rep.kappa4_source;
    j["kappa4"] = rational_to_string(rep.kappa4_value);
    if (!rep.skipped) {
        j["lambda0"] = complex_to_json(rep.lambda0, digits);
        json exps = json::array();
        for (const auto& b : rep.exponents) exps.push_back(int_to_string(b));
        j["exponents"] = exps;
        j["A_last"] = ball_to_json(rep.A_last, digits);
        j["B"] = ball_to_json(rep.B, digits);
        j["baker_rhs"] = ball_to_json(rep.baker_rhs, digits);
        j["kappa7"] = ball_to_json(rep.kappa7, digits);
        j["bound_thm_effectif"] = ball_to_json(rep.bound_thm_effectif, digits);
    }
    return j;
}

std::string timestamp_iso() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::IoError, "cannot open output file " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::IoError, "cannot open input file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace utl
