#include "ordstruct/books.hpp"

namespace ordstruct {

namespace {

constexpr std::array<BookInfo, 66> kBooks{{
    {1, "Genesis", "Ge"},          {2, "Exodus", "Ex"},          {3, "Leviticus", "Le"},
    {4, "Numbers", "Nu"},          {5, "Deuteronomy", "De"},     {6, "Joshua", "Jos"},
    {7, "Judges", "Jg"},           {8, "Ruth", "Ru"},            {9, "1 Samuel", "1Sa"},
    {10, "2 Samuel", "2Sa"},       {11, "1 Kings", "1Ki"},       {12, "2 Kings", "2Ki"},
    {13, "1 Chronicles", "1Ch"},   {14, "2 Chronicles", "2Ch"},  {15, "Ezra", "Ezr"},
    {16, "Nehemiah", "Ne"},        {17, "Esther", "Es"},         {18, "Job", "Job"},
    {19, "Psalms", "Ps"},          {20, "Proverbs", "Pr"},       {21, "Ecclesiastes", "Ec"},
    {22, "Song of Songs", "So"},   {23, "Isaiah", "Isa"},        {24, "Jeremiah", "Jer"},
    {25, "Lamentations", "La"},    {26, "Ezekiel", "Eze"},       {27, "Daniel", "Da"},
    {28, "Hosea", "Ho"},           {29, "Joel", "Joe"},          {30, "Amos", "Am"},
    {31, "Obadiah", "Ob"},         {32, "Jonah", "Jon"},         {33, "Micah", "Mic"},
    {34, "Nahum", "Na"},           {35, "Habakkuk", "Hab"},      {36, "Zephaniah", "Zep"},
    {37, "Haggai", "Hag"},         {38, "Zechariah", "Zec"},     {39, "Malachi", "Mal"},
    {40, "Matthew", "Mt"},         {41, "Mark", "Mr"},           {42, "Luke", "Lk"},
    {43, "John", "Jn"},            {44, "Acts", "Ac"},           {45, "Romans", "Ro"},
    {46, "1 Corinthians", "1Co"},  {47, "2 Corinthians", "2Co"}, {48, "Galatians", "Ga"},
    {49, "Ephesians", "Eph"},      {50, "Philippians", "Php"},   {51, "Colossians", "Col"},
    {52, "1 Thessalonians", "1Th"}, {53, "2 Thessalonians", "2Th"}, {54, "1 Timothy", "1Ti"},
    {55, "2 Timothy", "2Ti"},      {56, "Titus", "Tit"},         {57, "Philemon", "Phm"},
    {58, "Hebrews", "Heb"},        {59, "James", "Jas"},         {60, "1 Peter", "1Pe"},
    {61, "2 Peter", "2Pe"},        {62, "1 John", "1Jo"},        {63, "2 John", "2Jo"},
    {64, "3 John", "3Jo"},         {65, "Jude", "Jude"},         {66, "Revelation", "Re"},
}};

}  // namespace

std::optional<BookInfo> book_info(int id) {
  if (id < 1 || id > static_cast<int>(kBooks.size())) return std::nullopt;
  return kBooks[id - 1];
}

std::string book_label(int id) {
  if (auto info = book_info(id)) return std::string(info->abbrev);
  return std::to_string(id);
}

}  // namespace ordstruct
