#pragma once

#include <golev/golomb_op.hpp>
#include <golev/word.hpp>

#include <string>
#include <vector>

namespace golev {

// Published reference values for the four sequences the engine reproduces:
//   table 1: gol(2)      (A014644, 19 terms)
//   table 2: lev(2)      (A011784, 20 terms)
//   table 3: lev(0,0,1)  (A061892, 19 terms)
//   table 4: lev(0,2)    (A061894, 18 terms)
struct ReferenceTable {
  int id;
  SeqKind kind;
  const char* seed_text;
  std::vector<const char*> terms;
};

inline const ReferenceTable& reference_table(int id) {
  static const std::vector<ReferenceTable> tables = {
      {1,
       SeqKind::golombic,
       "2",
       {
           "1",
           "2",
           "2",
           "3",
           "5",
           "11",
           "38",
           "272",
           "6474",
           "1090483",
           "4363282578",
           "2940715000315189",
           "7930047000157075949085439",
           "14412592242471457956514645440241289655074",
           "70636608026754077888330819116433040562"
           "582634705380432362008848092",
           "62919380747847674923268444538883081290"
           "15560863748318746359641092668720877652"
           "23798623957170361696051714808",
           "274679710774467801558637071964120644"
           "623371548235513562173560586253899638"
           "892063967223817009010426152743428280"
           "95015228805612576584237742560138241905230925658418113598362450",
           "1068128249654676059545859772511092830"
           "2862782238991152779159513586521119002"
           "6888086973173355550098402002269620478"
           "9118657910813125744810794765768812113"
           "6855941878034817237323089025802952868"
           "9264337149196604264834413862430830118"
           "92049129175381484051105807121010552592345789589177244",
           "18132694087736252753825746762353797346"
           "19275691193110572504441448757346591432"
           "78273051378468643572659960483509344293"
           "92650305504635411522647472146929043966"
           "38434076992830632424546405639737791621"
           "19665115691428170790457955121041161219"
           "23792554965830233832467902012860708233"
           "74889716213602135071359209036524798037"
           "60317412179872022642510942471562312220"
           "92230645474866085358642626579262442931"
           "79785271338594333828913921905524801116"
           "72830592742834237563852836",
       }},
      {2,
       SeqKind::levine,
       "2",
       {
           "1",
           "2",
           "2",
           "3",
           "4",
           "7",
           "14",
           "42",
           "213",
           "2837",
           "175450",
           "139759600",
           "6837625106787",
           "266437144916648607844",
           "508009471379488821444261986503540",
           "37745517525533091954736701257541238885239740313139682",
           "534742638381269723378613957622045014225037327749913"
           "0252554080838158299886992660750432",
           "562886959965089436255276483697229698570162841824809622582532"
           "6053811392335926611739231671481093004498028362253089934588390"
           "3443973143886461",
           "8394177266373517316056054367253472668387345374746259369127854"
           "4525723285290023673872585715830432071384827472565652426695269"
           "7247104588082417791326567485011836725440062543774312172177629"
           "64060736471826937656819379445242826439",
           "13176858547072653394798357452304773863137353203466562795709626"
           "36621730054681161341912647579190214493114252604225721726187465"
           "27090032696189477749573760519660979835010392974960148241997061"
           "14081418515499154853768426703009531845240324456626705643814014"
           "49267858165631589878586040172951626441216996746793774353710261"
           "882069842922084089160802454747060478632732814946",
       }},
      {3,
       SeqKind::levine,
       "0 0 1",
       {
           "3",
           "1",
           "3",
           "3",
           "6",
           "10",
           "28",
           "108",
           "1011",
           "32511",
           "9314238",
           "84560776390",
           "219625370880235960",
           "5178941522681382123892005221",
           "317195599240175645015464306479382985752031865",
           "458118706320594776183599743881383842326646671002717"
           "727944161269026105841",
           "40524423106475362131212671577710438781983672527594689540186"
           "481007941224989794967558352011528561939344387386361918024",
           "517734706951251237535645078871725288172010082560578109830724"
           "732757803546151844793635698385556746175450470169068259400348"
           "809846908421331320764244898886841226930736565024659040954172"
           "9350948",
           "5851089907854437913711197398216048423981863081907791146594428"
           "0902674553085487990182624491947708226693686304248007269656384"
           "4454389594821366538242678424804173898851358613606640376458206"
           "1629553025446916407883007783604880422644051997090474874507220"
           "4122425938292829190234648392016115743586341696466638099854",
       }},
      {4,
       SeqKind::levine,
       "0 2",
       {
           "2",
           "2",
           "4",
           "6",
           "13",
           "35",
           "171",
           "1934",
           "97151",
           "52942129",
           "1435382350480",
           "21191828466255176653",
           "8482726531439110654657256441218",
           "50131800300416773319763186119561362369281827059942",
           "118593237444245044162979641011632199299775500898191"
           "134931490487767364941673215121",
           "16580038213765946158970490735716854098151679318563200923947"
           "35105253090963710161624288562839274938016433284875404831152"
           "497013018105",
           "548350247347858284424735841286598432135554883736080031677080"
           "628586300038196498320973659796091956479764217227046839806477"
           "827739983749817030539482371451432934487316574132306048207393"
           "59759059631007625156541555199",
           "2535457280728691927642079988404251435798134843896320193096475"
           "4688452974597655028851506417116883244713034524631462612033806"
           "6989405655081689947162822110618637554083688246295576367009862"
           "2518268788598523771527763241733406357760755761701436833329021"
           "6006596822290193802143301167039527782999078163517707768366511"
           "964728681044585582158791222111730",
       }},
  };
  for (const auto& t : tables)
    if (t.id == id) return t;
  throw std::invalid_argument("no reference table " + std::to_string(id) +
                              " (known: 1, 2, 3, 4)");
}

inline std::vector<Int> reference_terms(int id) {
  const ReferenceTable& t = reference_table(id);
  std::vector<Int> out;
  out.reserve(t.terms.size());
  for (const char* s : t.terms) out.emplace_back(s);
  return out;
}

}  // namespace golev
