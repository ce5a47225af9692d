#ifndef SOCLIN_CONSTRUCTIONS_HPP
#define SOCLIN_CONSTRUCTIONS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "soclin/common.hpp"
#include "soclin/conllu.hpp"

namespace soclin {

inline constexpr const char* kCoreSlot = "CORE-WORD";

// Dependency-slot pattern around the vehicle: the label of its incoming arc
// plus the labels of its direct dependents with the vehicle's own linear slot
// marked CORE-WORD. Two instances belong to the same construction iff their
// signatures are equal, label for label.
struct Signature {
    std::string incoming_label;
    std::vector<std::string> slots;

    auto operator<=>(const Signature&) const = default;

    std::string joined() const {
        std::string out;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (i) out += ' ';
            out += slots[i];
        }
        return out;
    }
};

inline Signature signature_of(const Instance& inst) {
    Signature sig;
    sig.incoming_label = inst.incoming_label;
    std::size_t preceding = 0;
    for (int idx : inst.dependent_indices)
        if (idx < inst.core_index) ++preceding;
    sig.slots = inst.dependent_labels;
    sig.slots.insert(sig.slots.begin() + static_cast<std::ptrdiff_t>(preceding), kCoreSlot);
    return sig;
}

struct Construction {
    Signature signature;
    std::vector<std::size_t> instance_ids; // indices into the profile's instance list
    int frequency = 0;
    int constituent_number = 0; // non-CORE-WORD slots
    int first_occurrence_year = 0;
    double coverage = 0.0; // frequency / retained instances
};

struct MetaphorProfile {
    std::string lemma;
    std::vector<Instance> instances; // the clustering input, id order
    std::vector<Construction> constructions;
    int total_instances = 0;
    int retained_instances = 0;
    int outlier_count = 0;
};

struct ClusterOptions {
    // "more than 6 instances" -> groups below 7 are outliers.
    int min_cluster_size = 7;
    // "covering more than four percent of the instance data".
    double min_coverage = 0.04;
    // Removing a group changes the retained denominator, so the coverage filter
    // iterates to a fixed point by default; one_pass_coverage applies it once
    // against the post-size-filter total.
    bool one_pass_coverage = false;
};

// Groups instances by exact signature, drops small groups, then drops groups
// below the coverage floor. Surviving groups become constructions sorted by
// frequency desc, FOY asc, signature.
inline MetaphorProfile cluster(const std::vector<Instance>& instances, const std::string& lemma,
                               const ClusterOptions& opts = {}) {
    if (instances.empty()) throw EmptyInput("cluster: no instances for lemma '" + lemma + "'");

    MetaphorProfile profile;
    profile.lemma = lemma;
    profile.instances = instances;
    profile.total_instances = static_cast<int>(instances.size());

    std::map<Signature, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < instances.size(); ++i)
        groups[signature_of(instances[i])].push_back(i);

    struct Group {
        const Signature* sig;
        const std::vector<std::size_t>* ids;
    };
    std::vector<Group> retained;
    for (const auto& [sig, ids] : groups)
        if (static_cast<int>(ids.size()) >= opts.min_cluster_size) retained.push_back({&sig, &ids});

    auto retained_total = [&retained] {
        std::size_t total = 0;
        for (const Group& g : retained) total += g.ids->size();
        return total;
    };

    // Coverage filter; each pass drops every group below the floor against the
    // current denominator, until a pass drops nothing.
    while (!retained.empty()) {
        const double denom = static_cast<double>(retained_total());
        std::vector<Group> kept;
        for (const Group& g : retained)
            if (static_cast<double>(g.ids->size()) / denom >= opts.min_coverage) kept.push_back(g);
        const bool stable = kept.size() == retained.size();
        retained = std::move(kept);
        if (stable || opts.one_pass_coverage) break;
    }

    profile.retained_instances = static_cast<int>(retained_total());
    profile.outlier_count = profile.total_instances - profile.retained_instances;

    for (const Group& g : retained) {
        Construction c;
        c.signature = *g.sig;
        c.instance_ids = *g.ids;
        c.frequency = static_cast<int>(g.ids->size());
        c.constituent_number = static_cast<int>(g.sig->slots.size()) - 1;
        c.first_occurrence_year = instances[g.ids->front()].year;
        for (std::size_t id : *g.ids)
            c.first_occurrence_year = std::min(c.first_occurrence_year, instances[id].year);
        c.coverage = profile.retained_instances > 0
                         ? static_cast<double>(c.frequency) / profile.retained_instances
                         : 0.0;
        profile.constructions.push_back(std::move(c));
    }
    std::sort(profile.constructions.begin(), profile.constructions.end(),
              [](const Construction& a, const Construction& b) {
                  if (a.frequency != b.frequency) return a.frequency > b.frequency;
                  if (a.first_occurrence_year != b.first_occurrence_year)
                      return a.first_occurrence_year < b.first_occurrence_year;
                  return a.signature < b.signature;
              });
    return profile;
}

struct SummaryRow {
    std::string signature;
    std::string incoming_label;
    int frequency = 0;
    int constituent_number = 0;
    int first_occurrence_year = 0;
    double coverage = 0.0;
};

struct ProfileSummary {
    std::string lemma;
    int construction_count = 0;
    int retained_instances = 0;
    int total_instances = 0;
    bool empty_warning = false; // every group filtered out
    std::vector<SummaryRow> rows;
};

inline ProfileSummary summarize(const MetaphorProfile& profile) {
    ProfileSummary s;
    s.lemma = profile.lemma;
    s.construction_count = static_cast<int>(profile.constructions.size());
    s.retained_instances = profile.retained_instances;
    s.total_instances = profile.total_instances;
    s.empty_warning = profile.constructions.empty();
    for (const Construction& c : profile.constructions)
        s.rows.push_back({c.signature.joined(), c.signature.incoming_label, c.frequency,
                          c.constituent_number, c.first_occurrence_year, c.coverage});
    return s;
}

inline void write_constructions_csv(const MetaphorProfile& profile, std::ostream& out) {
    out << "lemma,signature,incoming_label,frequency,constituent_number,first_occurrence_year,"
           "coverage\n";
    char buf[32];
    for (const Construction& c : profile.constructions) {
        std::snprintf(buf, sizeof buf, "%.6g", c.coverage);
        out << profile.lemma << ',' << c.signature.joined() << ',' << c.signature.incoming_label
            << ',' << c.frequency << ',' << c.constituent_number << ',' << c.first_occurrence_year
            << ',' << buf << "\n";
    }
}

inline nlohmann::json profile_to_json(const MetaphorProfile& profile) {
    nlohmann::json constructions = nlohmann::json::array();
    for (const Construction& c : profile.constructions) {
        nlohmann::json refs = nlohmann::json::array();
        for (std::size_t id : c.instance_ids) {
            const Instance& inst = profile.instances[id];
            refs.push_back({{"sentence_ref", inst.sentence_ref},
                            {"year", inst.year},
                            {"core_index", inst.core_index}});
        }
        constructions.push_back({{"incoming_label", c.signature.incoming_label},
                                 {"slots", c.signature.slots},
                                 {"frequency", c.frequency},
                                 {"constituent_number", c.constituent_number},
                                 {"first_occurrence_year", c.first_occurrence_year},
                                 {"coverage", c.coverage},
                                 {"instances", refs}});
    }
    return nlohmann::json{{"lemma", profile.lemma},
                          {"total_instances", profile.total_instances},
                          {"retained_instances", profile.retained_instances},
                          {"outlier_count", profile.outlier_count},
                          {"constructions", constructions}};
}

// Rebuilds a profile from its JSON form. Instance refs come back as stubs
// (sentence_ref/year/core_index only), which is all the downstream consumers
// need.
inline MetaphorProfile profile_from_json(const nlohmann::json& j) {
    MetaphorProfile p;
    p.lemma = j.at("lemma").get<std::string>();
    p.total_instances = j.at("total_instances").get<int>();
    p.retained_instances = j.at("retained_instances").get<int>();
    p.outlier_count = j.at("outlier_count").get<int>();
    for (const nlohmann::json& cj : j.at("constructions")) {
        Construction c;
        c.signature.incoming_label = cj.at("incoming_label").get<std::string>();
        c.signature.slots = cj.at("slots").get<std::vector<std::string>>();
        c.frequency = cj.at("frequency").get<int>();
        c.constituent_number = cj.at("constituent_number").get<int>();
        c.first_occurrence_year = cj.at("first_occurrence_year").get<int>();
        c.coverage = cj.at("coverage").get<double>();
        for (const nlohmann::json& rj : cj.value("instances", nlohmann::json::array())) {
            Instance inst;
            inst.sentence_ref = rj.at("sentence_ref").get<std::string>();
            inst.year = rj.at("year").get<int>();
            inst.core_index = rj.at("core_index").get<int>();
            c.instance_ids.push_back(p.instances.size());
            p.instances.push_back(std::move(inst));
        }
        p.constructions.push_back(std::move(c));
    }
    return p;
}

} // namespace soclin

#endif // SOCLIN_CONSTRUCTIONS_HPP
