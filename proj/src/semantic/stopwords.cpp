#include "mcfrag/rake.hpp"

namespace mcfrag {

// English stopword list, version mcfrag-en-1. Changing it changes extraction
// results; bump kStopwordListVersion together with any edit.
const StopwordSet& default_stopwords() {
  static const StopwordSet kWords{
    "a", "able", "about", "above", "according", "accordingly", "across", "actually",
    "after", "afterwards", "again", "against", "ago", "ah", "all", "almost", "alone",
    "along", "already", "also", "although", "always", "am", "among", "amongst", "an",
    "and", "another", "any", "anyhow", "anyone", "anything", "anyway", "anywhere", "are",
    "around", "as", "at", "away", "back", "be", "became", "because", "become", "becomes",
    "becoming", "been", "before", "beforehand", "began", "behind", "being", "below",
    "beside", "besides", "best", "better", "between", "beyond", "both", "but", "by",
    "came", "can", "cannot", "certain", "certainly", "clearly", "come", "comes", "could",
    "did", "different", "do", "does", "doing", "done", "down", "due", "during", "each",
    "eg", "eight", "either", "else", "elsewhere", "enough", "especially", "etc", "even",
    "ever", "every", "everyone", "everything", "everywhere", "example", "except", "far",
    "few", "first", "five", "for", "former", "formerly", "found", "four", "from",
    "further", "get", "gets", "getting", "given", "gives", "go", "goes", "going", "gone",
    "got", "had", "has", "have", "having", "he", "hence", "her", "here", "hereafter",
    "hereby", "herein", "hereupon", "hers", "herself", "him", "himself", "his", "how",
    "however", "i", "ie", "if", "in", "include", "included", "includes", "including",
    "indeed", "instead", "into", "is", "it", "it's", "its", "itself", "just", "kept",
    "know", "known", "largely", "last", "later", "latter", "latterly", "least", "less",
    "like", "likely", "made", "mainly", "make", "makes", "making", "many", "may", "me",
    "mean", "means", "meanwhile", "might", "mine", "more", "moreover", "most", "mostly",
    "much", "must", "my", "myself", "namely", "nearly", "need", "needs", "neither",
    "never", "nevertheless", "new", "next", "nine", "no", "nobody", "none", "noone",
    "nor", "not", "nothing", "now", "nowhere", "of", "off", "often", "old", "on", "once",
    "one", "only", "onto", "or", "other", "others", "otherwise", "our", "ours",
    "ourselves", "out", "over", "own", "particular", "particularly", "per", "perhaps",
    "please", "possible", "probably", "put", "quite", "rather", "re", "really",
    "regarding", "said", "same", "say", "says", "see", "seem", "seemed", "seeming",
    "seems", "seen", "seven", "several", "shall", "she", "should", "shown",
    "significantly", "similar", "similarly", "simply", "since", "six", "so", "some",
    "somehow", "someone", "something", "sometime", "sometimes", "somewhere",
    "specifically", "still", "such", "take", "taken", "takes", "ten", "than", "that",
    "that's", "the", "their", "theirs", "them", "themselves", "then", "thence", "there",
    "thereafter", "thereby", "therefore", "therein", "thereupon", "these", "they",
    "this", "those", "though", "three", "through", "throughout", "thru", "thus", "to",
    "today", "together", "told", "too", "took", "toward", "towards", "truly", "two",
    "under", "until", "up", "upon", "us", "use", "used", "uses", "using", "usually",
    "various", "very", "via", "was", "way", "ways", "we", "well", "went", "were", "what",
    "whatever", "when", "whence", "whenever", "where", "whereafter", "whereas",
    "whereby", "wherein", "whereupon", "wherever", "whether", "which", "while",
    "whither", "who", "whoever", "whole", "whom", "whose", "why", "will", "with",
    "within", "without", "would", "yes", "yet", "you", "your", "yours", "yourself",
    "yourselves",
  };
  return kWords;
}

}  // namespace mcfrag
