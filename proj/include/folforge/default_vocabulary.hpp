#pragma once

#include <string_view>

namespace folforge {

// Shipped default lexicon; identical to data/vocabulary.json.
inline constexpr std::string_view kDefaultVocabularyJson = R"json({
  "predicates": [
    {"name": "IsHappy", "arity": 1, "signature": ["Person"]},
    {"name": "IsThoughtful", "arity": 1, "signature": ["Person"]},
    {"name": "HasOfficeIn", "arity": 1, "signature": ["Person"]},
    {"name": "IsTall", "arity": 1, "signature": ["Person"]},
    {"name": "IsStudent", "arity": 1, "signature": ["Person"]},
    {"name": "IsRetired", "arity": 1, "signature": ["Person"]},
    {"name": "Travels", "arity": 1, "signature": ["Person"]},
    {"name": "IsWealthy", "arity": 1, "signature": ["Organization"]},
    {"name": "IsNonprofit", "arity": 1, "signature": ["Organization"]},
    {"name": "IsHiring", "arity": 1, "signature": ["Organization"]},
    {"name": "IsCrowded", "arity": 1, "signature": ["Location"]},
    {"name": "IsCoastal", "arity": 1, "signature": ["Location"]},
    {"name": "IsHistoric", "arity": 1, "signature": ["Location"]},
    {"name": "IsPopular", "arity": 1, "signature": ["Field"]},
    {"name": "IsTheoretical", "arity": 1, "signature": ["Field"]},
    {"name": "IsFragile", "arity": 1, "signature": ["Object"]},
    {"name": "IsExpensive", "arity": 1, "signature": ["Object"]},
    {"name": "IsHandmade", "arity": 1, "signature": ["Object"]},
    {"name": "IsDomestic", "arity": 1, "signature": ["Animal"]},
    {"name": "IsNocturnal", "arity": 1, "signature": ["Animal"]},
    {"name": "IsEndangered", "arity": 1, "signature": ["Animal"]},
    {"name": "Swims", "arity": 1, "signature": ["Animal"]},
    {"name": "IsCarbonated", "arity": 1, "signature": ["Drink"]},
    {"name": "IsAlcoholic", "arity": 1, "signature": ["Drink"]},
    {"name": "IsSweet", "arity": 1, "signature": ["Drink"]},
    {"name": "Like", "arity": 2, "signature": ["Person", "Animal"]},
    {"name": "LivesIn", "arity": 2, "signature": ["Person", "Location"]},
    {"name": "WorksFor", "arity": 2, "signature": ["Person", "Organization"]},
    {"name": "Studies", "arity": 2, "signature": ["Person", "Field"]},
    {"name": "Owns", "arity": 2, "signature": ["Person", "Object"]},
    {"name": "Drinks", "arity": 2, "signature": ["Person", "Drink"]},
    {"name": "Visits", "arity": 2, "signature": ["Person", "Location"]},
    {"name": "Knows", "arity": 2, "signature": ["Person", "Person"]},
    {"name": "Admires", "arity": 2, "signature": ["Person", "Person"]},
    {"name": "Teaches", "arity": 2, "signature": ["Person", "Field"]},
    {"name": "Feeds", "arity": 2, "signature": ["Person", "Animal"]},
    {"name": "Uses", "arity": 2, "signature": ["Person", "Object"]},
    {"name": "Repairs", "arity": 2, "signature": ["Person", "Object"]},
    {"name": "Sells", "arity": 2, "signature": ["Organization", "Object"]},
    {"name": "IsLocatedIn", "arity": 2, "signature": ["Organization", "Location"]},
    {"name": "Funds", "arity": 2, "signature": ["Organization", "Field"]},
    {"name": "Sponsors", "arity": 2, "signature": ["Organization", "Person"]},
    {"name": "Produces", "arity": 2, "signature": ["Organization", "Drink"]},
    {"name": "Employs", "arity": 2, "signature": ["Organization", "Person"]},
    {"name": "Hosts", "arity": 2, "signature": ["Location", "Organization"]},
    {"name": "Borders", "arity": 2, "signature": ["Location", "Location"]},
    {"name": "Chases", "arity": 2, "signature": ["Animal", "Animal"]},
    {"name": "RoamsIn", "arity": 2, "signature": ["Animal", "Location"]},
    {"name": "Prefers", "arity": 2, "signature": ["Animal", "Drink"]},
    {"name": "IsPartOf", "arity": 2, "signature": ["Field", "Field"]}
  ],
  "entities": {
    "Person": ["chef", "teacher", "doctor", "student", "artist", "farmer", "pilot", "lawyer", "nurse", "writer"],
    "Organization": ["company", "university", "hospital", "bank", "museum", "charity", "startup", "school", "library", "bakery"],
    "Location": ["zone", "city", "village", "park", "island", "harbor", "valley", "district", "market", "desert"],
    "Field": ["mathematics", "biology", "physics", "history", "economics", "linguistics", "chemistry", "music", "philosophy", "medicine"],
    "Object": ["book", "laptop", "bicycle", "lamp", "camera", "guitar", "watch", "chair", "phone", "umbrella"],
    "Animal": ["dog", "cat", "horse", "rabbit", "owl", "dolphin", "tiger", "parrot", "fox", "turtle"],
    "Drink": ["coffee", "tea", "juice", "milk", "water", "lemonade", "cocoa", "wine", "soda", "smoothie"]
  }
}
)json";

}  // namespace folforge
