#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sgbench/errors.hpp"
#include "sgbench/types.hpp"

namespace sgbench {

enum class DatasetId { SynPaths, SynTypes, SynTipr, WdMovies, WdArticles };

struct SplitSizes {
    size_t train = 0;
    size_t valid = 0;
    size_t test = 0;
    size_t total() const { return train + valid + test; }
};

struct DatasetInfo {
    DatasetId id;
    const char* name;
    bool synthetic;
    SplitSizes default_sizes;
    size_t n_entities;
    size_t n_relations;
    int min_triples;
    int max_triples;
};

inline const DatasetInfo& dataset_info(DatasetId id) {
    static const std::array<DatasetInfo, 5> kInfos = {{
        {DatasetId::SynPaths, "syn-paths", true, {60000, 20000, 20000}, 49, 3, 3, 3},
        {DatasetId::SynTypes, "syn-types", true, {60000, 20000, 20000}, 30, 3, 3, 3},
        {DatasetId::SynTipr, "syn-tipr", true, {50000, 10000, 10000}, 130, 5, 5, 5},
        {DatasetId::WdMovies, "wd-movies", false, {38267, 15698, 15796}, 24093, 3, 2, 21},
        {DatasetId::WdArticles, "wd-articles", false, {54163, 22922, 22915}, 60932, 6, 4, 212},
    }};
    return kInfos[static_cast<size_t>(id)];
}

inline std::optional<DatasetId> dataset_from_name(std::string_view name) {
    for (auto id : {DatasetId::SynPaths, DatasetId::SynTypes, DatasetId::SynTipr,
                    DatasetId::WdMovies, DatasetId::WdArticles})
        if (name == dataset_info(id).name) return id;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Built-in label lexicons for the synthetic datasets. Cardinalities are
// fixed (49 cities / 30 typed entities / 130 tipr entities).
// ---------------------------------------------------------------------------
namespace lex {

inline constexpr std::array<const char*, 49> kPathCities = {
    "Amsterdam",    "Rotterdam",  "Den_Haag",    "Utrecht",   "Eindhoven",
    "Tilburg",      "Almere",     "Groningen",   "Breda",     "Nijmegen",
    "Enschede",     "Haarlem",    "Arnhem",      "Zaanstad",  "Amersfoort",
    "Apeldoorn",    "Den_Bosch",  "Hoofddorp",   "Maastricht", "Leiden",
    "Dordrecht",    "Zoetermeer", "Zwolle",      "Deventer",  "Delft",
    "Alkmaar",      "Leeuwarden", "Venlo",       "Alphen_aan_den_Rijn", "Helmond",
    "Sittard",      "Oss",        "Hilversum",   "Heerlen",   "Purmerend",
    "Roosendaal",   "Schiedam",   "Lelystad",    "Emmen",     "Nieuwegein",
    "Ede",          "Hoorn",      "Vlaardingen", "Gouda",     "Spijkenisse",
    "Roermond",     "IJmuiden",   "Assen",       "Middelburg",
};
inline constexpr std::array<const char*, 3> kPathRelations = {"cycle_to", "drive_to", "train_to"};

inline constexpr std::array<const char*, 10> kTypeLanguages = {
    "Dutch", "English", "Czech", "Greek", "Italian",
    "French", "German", "Spanish", "Hungarian", "Serbian",
};
inline constexpr std::array<const char*, 10> kTypeCountries = {
    "United_Kingdom", "Serbia", "Spain", "Norway", "Greece",
    "Ireland", "France", "Netherlands", "Hungary", "Italy",
};
inline constexpr std::array<const char*, 10> kTypeCities = {
    "Budapest", "Paris", "Amsterdam", "London", "Madrid",
    "Oslo", "Athens", "Dublin", "Belgrade", "Rome",
};
// Template order: one triple per relation, in this order.
inline constexpr std::array<const char*, 3> kTypeRelations = {"same_type_as", "could_be_part_of",
                                                              "spoken_in"};

inline constexpr std::array<const char*, 50> kTiprNames = {
    "Cleophas_Erős",       "Romana_Sitk",          "Drusus_Krejči",      "Božidar_Bullard",
    "Adelheid_Vesely",     "Agnetha_Lindqvist",    "Aloysius_Brennan",   "Anatolia_Ferreira",
    "Aurelio_Marchetti",   "Beatrix_Kovács",       "Benedikt_Sørensen",  "Bohumila_Novak",
    "Casimir_Laurent",     "Cecylia_Wójcik",       "Christoffel_de_Vries", "Clementine_Rousseau",
    "Cornelius_Baumgartner", "Dagny_Halvorsen",    "Damiana_Russo",      "Dimitrios_Papadopoulos",
    "Edmund_Whitfield",    "Eleonora_Visser",      "Emeric_Duval",       "Esperanza_Delgado",
    "Eustace_Holloway",    "Evangelina_Moreau",    "Ferdinand_Krause",   "Fionnuala_Byrne",
    "Gerolt_Janssen",      "Gisela_Hofmann",       "Gregor_Mikkelsen",   "Henrietta_Walsh",
    "Hieronymus_Falk",     "Ingeborg_Dahl",        "Isidora_Petrović",   "Jacobus_van_Dijk",
    "Katarzyna_Zielinska", "Leopold_Varga",        "Lidmila_Horáková",   "Ludovica_Bianchi",
    "Magnus_Eriksen",      "Marcelina_Kowalska",   "Nikolaus_Brandt",    "Octavia_Lombardi",
    "Ottoline_Mercer",     "Perpetua_Ndiaye",      "Quirin_Steiner",     "Radoslav_Dvořák",
    "Seraphina_Ortiz",     "Theodoric_Lambert",
};
inline constexpr std::array<const char*, 7> kTiprRoles = {
    "masters_researcher", "phd_researcher",      "postdoc",   "lecturer",
    "assistant_professor", "associate_professor", "professor",
};
inline constexpr int kTiprYearMin = 1950;
inline constexpr int kTiprYearMax = 2020;  // inclusive; 71 year entities
// Template order: one triple per relation, in this order.
inline constexpr std::array<const char*, 5> kTiprRelations = {"has_name", "has_role", "has_time",
                                                              "start_year", "end_year"};
inline constexpr const char* kAcademicNode = "_academic";
inline constexpr const char* kTimeNode = "_time";

inline constexpr std::array<const char*, 3> kMovieRelations = {"has_director", "has_actor",
                                                               "has_genre"};
inline constexpr const char* kMovieNode = "_movie";

inline constexpr std::array<const char*, 6> kArticleRelations = {
    "has_author", "has_name", "has_order", "cites", "has_subject", "subclass_of"};
inline constexpr const char* kArticleNode = "_article";

}  // namespace lex

// Fixed-order vocabulary for a synthetic dataset; entity/relation counts
// match the dataset registry exactly (49/3, 30/3, 130/5).
inline Vocabulary make_synthetic_vocabulary(DatasetId id) {
    Vocabulary vocab;
    switch (id) {
        case DatasetId::SynPaths:
            for (const char* c : lex::kPathCities) vocab.add_entity(c);
            for (const char* r : lex::kPathRelations) vocab.add_relation(r);
            break;
        case DatasetId::SynTypes:
            for (const char* e : lex::kTypeLanguages) vocab.add_entity(e);
            for (const char* e : lex::kTypeCountries) vocab.add_entity(e);
            for (const char* e : lex::kTypeCities) vocab.add_entity(e);
            for (const char* r : lex::kTypeRelations) vocab.add_relation(r);
            break;
        case DatasetId::SynTipr:
            for (const char* e : lex::kTiprNames) vocab.add_entity(e);
            for (const char* e : lex::kTiprRoles) vocab.add_entity(e);
            for (int y = lex::kTiprYearMin; y <= lex::kTiprYearMax; ++y)
                vocab.add_entity(std::to_string(y));
            vocab.add_entity(lex::kAcademicNode);
            vocab.add_entity(lex::kTimeNode);
            for (const char* r : lex::kTiprRelations) vocab.add_relation(r);
            break;
        default:
            throw ContractError("not a synthetic dataset");
    }
    vocab.seal();
    return vocab;
}

}  // namespace sgbench
