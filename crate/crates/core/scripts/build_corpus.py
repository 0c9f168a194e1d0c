"""Builds data/corpus.json from the sentence list below.

Serbian is authored in Latin script here; the Cyrillic column is produced by
reference_translit.lat2cyr and the Latin column is re-derived from it, so the
stored file satisfies the Latin == cyr2lat(Cyrillic) corpus rule.
"""
import json
import os

from reference_translit import cyr2lat, lat2cyr

TRIPLETS = [
    ("The old man walked slowly along the river every morning.",
     "Each morning, the elderly man strolled leisurely beside the river.",
     "Quantum computers could eventually break many current encryption schemes.",
     "Stari čovek je svakog jutra polako šetao pored reke.",
     "Svakog jutra, stariji čovek se lagano šetao uz reku.",
     "Kvantni računari bi vremenom mogli da razbiju mnoge današnje šeme šifrovanja."),
    ("Children love to play in the park after school.",
     "After classes, kids enjoy playing in the park.",
     "The price of copper rose sharply on international markets last week.",
     "Deca vole da se igraju u parku posle škole.",
     "Posle nastave, klinci uživaju u igri u parku.",
     "Cena bakra je prošle nedelje naglo porasla na međunarodnim tržištima."),
    ("She baked fresh bread for her family on Sunday.",
     "On Sunday she made homemade bread for her relatives.",
     "Volcanic eruptions can change the global climate for several years.",
     "Ona je u nedelju ispekla svež hleb za svoju porodicu.",
     "U nedelju je napravila domaći hleb za svoju rodbinu.",
     "Vulkanske erupcije mogu promeniti globalnu klimu na nekoliko godina."),
    ("The library stays open late during the exam period.",
     "During exams, the library keeps longer opening hours.",
     "My neighbor's dog barks loudly whenever the mail carrier arrives.",
     "Biblioteka radi do kasno tokom ispitnog roka.",
     "Tokom ispita, biblioteka ima produženo radno vreme.",
     "Komšijin pas glasno laje kad god stigne poštar."),
    ("Heavy rain flooded several streets in the city center yesterday.",
     "Yesterday, downpours left many downtown streets under water.",
     "Learning a musical instrument improves memory and concentration in children.",
     "Jaka kiša je juče poplavila nekoliko ulica u centru grada.",
     "Juče su pljuskovi ostavili mnoge ulice u centru pod vodom.",
     "Učenje sviranja instrumenta poboljšava pamćenje i koncentraciju kod dece."),
    ("Friendship requires trust, patience, and honest communication between people.",
     "Being true friends demands honesty, patience, and mutual trust.",
     "The train to Novi Sad departs from the second platform.",
     "Prijateljstvo zahteva poverenje, strpljenje i iskrenu komunikaciju među ljudima.",
     "Pravo prijateljstvo traži iskrenost, strpljenje i međusobno poverenje.",
     "Voz za Novi Sad polazi sa drugog perona."),
    ("The farmer harvested wheat before the storm reached the valley.",
     "Before the storm hit the valley, the farmer gathered his wheat.",
     "Modern smartphones contain more computing power than early space missions.",
     "Seljak je požnjeo pšenicu pre nego što je oluja stigla u dolinu.",
     "Pre nego što je oluja zahvatila dolinu, seljak je sakupio svoju pšenicu.",
     "Savremeni pametni telefoni imaju veću računarsku snagu od ranih svemirskih misija."),
    ("Reading books before sleep helps many people relax.",
     "Many people find it relaxing to read before bed.",
     "The football team lost the final match in extra time.",
     "Čitanje knjiga pre spavanja pomaže mnogim ljudima da se opuste.",
     "Mnogi ljudi smatraju da ih čitanje pred spavanje opušta.",
     "Fudbalski tim je izgubio finalnu utakmicu u produžecima."),
    ("The doctor advised him to drink more water every day.",
     "His physician recommended increasing his daily water intake.",
     "Ancient Roman roads are still visible in parts of Serbia.",
     "Lekar mu je savetovao da svakog dana pije više vode.",
     "Njegov lekar mu je preporučio da poveća dnevni unos vode.",
     "Drevni rimski putevi su i dalje vidljivi u delovima Srbije."),
    ("Snow covered the mountains early this winter.",
     "This winter the mountains were blanketed in snow quite early.",
     "The museum opened a new exhibition about medieval manuscripts.",
     "Sneg je ove zime rano prekrio planine.",
     "Ove zime su planine prilično rano bile pod snežnim pokrivačem.",
     "Muzej je otvorio novu izložbu o srednjovekovnim rukopisima."),
    ("Good teachers inspire their students to ask difficult questions.",
     "Great educators encourage pupils to pose challenging questions.",
     "Fresh tomatoes taste best in the middle of summer.",
     "Dobri nastavnici podstiču svoje učenike da postavljaju teška pitanja.",
     "Sjajni predavači ohrabruju đake da postavljaju izazovna pitanja.",
     "Sveži paradajz je najukusniji usred leta."),
    ("The company hired fifty new workers for its factory.",
     "Fifty additional employees were taken on at the firm's plant.",
     "Birds migrate south when the days become shorter and colder.",
     "Kompanija je zaposlila pedeset novih radnika u svojoj fabrici.",
     "U pogonu te firme primljeno je pedeset dodatnih zaposlenih.",
     "Ptice se sele na jug kada dani postanu kraći i hladniji."),
    ("Hope gives people strength to overcome hard times.",
     "Having hope helps people endure difficult periods in life.",
     "The bakery on the corner sells the best pastries in town.",
     "Nada daje ljudima snagu da prebrode teška vremena.",
     "Nada pomaže ljudima da izdrže teške životne periode.",
     "Pekara na uglu prodaje najbolja peciva u gradu."),
    ("We watched the sunset from the top of the hill.",
     "From the hilltop, we observed the sun going down.",
     "Tax reforms were debated in parliament for three long days.",
     "Gledali smo zalazak sunca sa vrha brda.",
     "Sa vrha brda posmatrali smo kako sunce zalazi.",
     "O poreskim reformama se u skupštini raspravljalo tri duga dana."),
    ("The cat slept peacefully on the warm windowsill all afternoon.",
     "All afternoon the cat dozed calmly on the sunny window ledge.",
     "Engineers designed a bridge that can withstand strong earthquakes.",
     "Mačka je celo popodne mirno spavala na toploj prozorskoj dasci.",
     "Celo popodne mačka je spokojno dremala na sunčanom simsu.",
     "Inženjeri su projektovali most koji može da izdrži jake zemljotrese."),
    ("Traveling abroad teaches young people about other cultures.",
     "Young people learn about different cultures by visiting foreign countries.",
     "The kettle whistled loudly while grandmother prepared the tea.",
     "Putovanja u inostranstvo uče mlade ljude o drugim kulturama.",
     "Mladi upoznaju različite kulture obilazeći strane zemlje.",
     "Čajnik je glasno zviždao dok je baka pripremala čaj."),
    ("The river froze completely during the coldest week of January.",
     "In the coldest January week, the river iced over entirely.",
     "Online shopping has changed how small businesses reach customers.",
     "Reka se potpuno zaledila tokom najhladnije nedelje u januaru.",
     "U najhladnijoj nedelji januara reka se sasvim zaledila.",
     "Kupovina preko interneta je promenila način na koji mali biznisi dolaze do kupaca."),
    ("My brother repairs old bicycles in his small garage.",
     "In his little garage, my brother fixes up vintage bikes.",
     "Scientists discovered a new species of frog in the rainforest.",
     "Moj brat popravlja stare bicikle u svojoj maloj garaži.",
     "U maloj garaži moj brat obnavlja starinske bicikle.",
     "Naučnici su otkrili novu vrstu žabe u prašumi."),
    ("Kindness toward strangers can make the world a better place.",
     "Being kind to people we do not know improves the world.",
     "The printer ran out of ink in the middle of the report.",
     "Ljubaznost prema strancima može svet učiniti boljim mestom.",
     "Kada smo ljubazni prema nepoznatim ljudima, svet postaje bolji.",
     "Štampaču je nestalo mastila usred štampanja izveštaja."),
    ("The orchestra rehearsed the symphony for the upcoming concert.",
     "Musicians practiced the symphony ahead of their next performance.",
     "Wild mushrooms grow in damp forests after autumn rain.",
     "Orkestar je uvežbavao simfoniju za predstojeći koncert.",
     "Muzičari su vežbali simfoniju pred svoj sledeći nastup.",
     "Divlje pečurke rastu u vlažnim šumama posle jesenje kiše."),
    ("Grandmother tells us stories about her childhood in the village.",
     "Our grandma often shares tales of growing up in the countryside.",
     "The airport introduced stricter security checks for all passengers.",
     "Baka nam priča priče o svom detinjstvu na selu.",
     "Naša baka često pripoveda kako je odrastala na selu.",
     "Aerodrom je uveo strože bezbednosne provere za sve putnike."),
    ("The students planted trees along the road near their school.",
     "Near their school, pupils planted a row of trees beside the road.",
     "Chess players must think several moves ahead to win.",
     "Učenici su zasadili drveće duž puta pored svoje škole.",
     "U blizini škole, đaci su posadili drvored pored puta.",
     "Šahisti moraju da razmišljaju nekoliko poteza unapred da bi pobedili."),
    ("Fresh air and exercise are important for a healthy life.",
     "A healthy lifestyle depends on physical activity and clean air.",
     "The painter used bright colors to show the busy market.",
     "Svež vazduh i vežbanje su važni za zdrav život.",
     "Zdrav način života zavisi od fizičke aktivnosti i čistog vazduha.",
     "Slikar je upotrebio jarke boje da prikaže užurbanu pijacu."),
    ("The lost child was found safe near the lake.",
     "Rescuers located the missing boy unharmed close to the lake.",
     "Economists expect inflation to slow down during the next year.",
     "Izgubljeno dete je pronađeno živo i zdravo blizu jezera.",
     "Spasioci su pronašli nestalog dečaka nepovređenog u blizini jezera.",
     "Ekonomisti očekuju da će inflacija usporiti tokom sledeće godine."),
    ("Memories of our first home will stay with us forever.",
     "We will always remember the first house we lived in.",
     "The chef added too much salt to the soup again.",
     "Sećanja na naš prvi dom ostaće zauvek sa nama.",
     "Uvek ćemo pamtiti prvu kuću u kojoj smo živeli.",
     "Kuvar je ponovo stavio previše soli u supu."),
    ("The village celebrates its harvest festival every September.",
     "Each September, the villagers hold a festival to celebrate the harvest.",
     "Satellites help meteorologists predict dangerous storms more accurately.",
     "Selo svakog septembra proslavlja svoj praznik žetve.",
     "Svakog septembra meštani organizuju svetkovinu kojom slave žetvu.",
     "Sateliti pomažu meteorolozima da preciznije predvide opasne oluje."),
    ("Justice should be equal for rich and poor citizens alike.",
     "Rich and poor people deserve the same treatment before the law.",
     "The puppy chewed my new shoes while I was at work.",
     "Pravda bi trebalo da bude jednaka za bogate i siromašne građane.",
     "Bogati i siromašni zaslužuju isti tretman pred zakonom.",
     "Štene mi je izgrizlo nove cipele dok sam bio na poslu."),
    ("The fishermen returned to the harbor with a large catch.",
     "With plenty of fish, the fishermen sailed back into port.",
     "Students must submit their applications before the end of March.",
     "Ribari su se vratili u luku sa velikim ulovom.",
     "Sa mnogo ribe, ribari su doplovili nazad u pristanište.",
     "Studenti moraju da predaju prijave pre kraja marta."),
    ("Learning a new language opens doors to many opportunities.",
     "Mastering a foreign language creates numerous new possibilities.",
     "The thunderstorm knocked out electricity across the whole region.",
     "Učenje novog jezika otvara vrata mnogim prilikama.",
     "Savladavanje stranog jezika stvara brojne nove mogućnosti.",
     "Grmljavina je izazvala nestanak struje u celom regionu."),
    ("Good stories outlive the people who first told them.",
     "A great tale lasts longer than the person who created it.",
     "The bus was late because of heavy traffic downtown.",
     "Dobre priče nadžive one koji su ih prvi ispričali.",
     "Dobra priča traje duže od osobe koja ju je stvorila.",
     "Autobus je kasnio zbog gužve u centru grada."),
]


def main():
    out = []
    for i, (eo, ep, er, so, sp, sr) in enumerate(TRIPLETS):
        cyr = {k: lat2cyr(v) for k, v in zip(("orig", "para", "rand"), (so, sp, sr))}
        lat = {k: cyr2lat(v) for k, v in cyr.items()}
        for k, v in zip(("orig", "para", "rand"), (so, sp, sr)):
            assert lat[k] == v, (v, lat[k])
        for s in (eo, ep, er):
            assert 7 <= len(s.split()) <= 13, s
        out.append({"id": i, "en": {"orig": eo, "para": ep, "rand": er}, "sr_cyr": cyr, "sr_lat": lat})
    texts = [t for tr in out for lang in ("en", "sr_cyr", "sr_lat") for t in tr[lang].values()]
    assert len(texts) == 270 and len(set(texts)) == 270
    here = os.path.dirname(os.path.abspath(__file__))
    with open(os.path.join(here, "..", "data", "corpus.json"), "w", encoding="utf-8") as f:
        json.dump(out, f, ensure_ascii=False, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
