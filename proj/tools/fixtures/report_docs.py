"""Report fixtures: the QA toy reports and the quality-procedure document.

Each report is (id, title, date, [(heading, [paragraph, ...]), ...]).
"""

QA_REPORTS = [
    ("cdf-athena", "Athena CDF Study Report", "2019-05-20", [
        ("1 Mission Objectives", [
            "Athena is an observatory designed to study the hot and energetic universe. "
            "The science case was endorsed by the advisory committees after a long selection process. "
            "The observatory will map hot gas structures in galaxy clusters and will find supermassive "
            "black holes in the early universe."]),
        ("2 Launch and Orbit", [
            "ATHENA will be launched on Ariane 5. The transfer to the operational orbit takes 90 days. "
            "The spacecraft will operate in a large halo orbit around the second Lagrange point of the "
            "Sun-Earth system, which offers a stable thermal environment and continuous visibility."]),
        ("3 Payload", [
            "The X-ray telescope has a focal length of 12 metres. "
            "Two instruments share the focal plane and are moved into the beam by a movable platform. "
            "Each instrument was studied by a dedicated consortium of European institutes."]),
        ("4 Power and Thermal", [
            "The solar array provides 2500 watts at the end of the mission. "
            "Batteries cover the short eclipses during the transfer phase. "
            "Radiators on the shaded side reject the heat dissipated by the electronics boxes."]),
        ("5 Operations", [
            "The Science Operations Centre of Athena is located in Villafranca. "
            "Observation plans are uploaded weekly and the data are distributed to the community after a "
            "proprietary period of one year, following the usual policy of the observatory programme."]),
    ]),
    ("cdf-lunar", "Lunar Oxygen Demonstrator CDF Report", "2020-11-02", [
        ("1 Objectives", [
            "The oxygen is extracted from the regolith by molten salt electrolysis. "
            "The demonstration shall prove that the process works in lunar gravity and vacuum. "
            "Success would open the way to a pilot plant supplying future crews."]),
        ("2 Landing Site", [
            "The landing site of the lander is Shackleton crater. "
            "Illumination conditions near the rim allow long periods of sunlight for the solar panels. "
            "Slopes below ten degrees were required for a safe touchdown."]),
        ("3 Payload", [
            "The payload mass of the lander is 120 kg. "
            "The reactor, the regolith feeder and the gas analyser are mounted on the top deck. "
            "A small robotic scoop delivers regolith to the feeder during the surface phase."]),
        ("4 Power and Thermal", [
            "The lander carries a radioisotope heater unit to survive the lunar night. "
            "During daylight the solar panels charge lithium ion batteries. "
            "Louvres regulate the temperature of the reactor compartment at all times."]),
        ("5 Communications", [
            "The lander communicates with Earth through the Lunar Gateway relay. "
            "A direct link is kept as backup for commissioning and contingency operations. "
            "Data volumes are small because the experiment produces mostly housekeeping."]),
    ]),
    ("cdf-debris", "Active Debris Removal CDF Report", "2018-03-12", [
        ("1 Target", [
            "The target of the mission is a Vega upper stage adapter. "
            "The object was left in orbit after a launch in 2013 and tumbles slowly. "
            "Its simple shape and known mass make it a good first target for a demonstration."]),
        ("2 Capture", [
            "The chaser captures the target with four robotic arms. "
            "Close approach relies on cameras and lidar for relative navigation. "
            "Ground operators can abort the approach at predefined hold points. Simulations covered a wide range of tumbling rates."]),
        ("3 Disposal", [
            "After capture the stack performs a controlled re-entry over the South Pacific Ocean. "
            "The burn sequence lowers the perigee in several steps to keep the risk to people negligible. "
            "Fragments that survive fall into an uninhabited area."]),
        ("4 Propulsion", [
            "Monopropellant hydrazine thrusters provide attitude control and orbit manoeuvres. "
            "The tanks are sized for the approach, the capture and the final disposal burns. "
            "A margin of twenty percent is applied to the propellant budget."]),
        ("5 Ground Segment", [
            "Operations are conducted from a commercial control centre with support from tracking "
            "stations. Space surveillance data refine the orbit of the target before each approach "
            "phase. Conjunction screening is performed daily."]),
    ]),
    ("cdf-sst", "Sea Surface Temperature Constellation CDF Report", "2021-06-07", [
        ("1 Mission Goal", [
            "The mission delivers sea surface temperature maps several times per day. "
            "Weather services and ocean forecasting centres are the main users of the data. "
            "Climate records benefit from the consistent calibration across satellites."]),
        ("2 Constellation", [
            "The constellation has 6 satellites. "
            "The satellites fly in a sun-synchronous orbit. "
            "Local times of the orbital planes are spread across the day to sample the diurnal cycle. Launches are planned in pairs over two years."]),
        ("3 Instrument", [
            "The thermal infrared sensor has a spatial resolution of 1 km. "
            "Two onboard blackbodies provide calibration during every scan. "
            "Cloud screening is performed on ground with a dedicated algorithm. The design inherits from earlier national missions."]),
        ("4 Platform", [
            "Each satellite is based on a small platform with a mass below two hundred kilograms. "
            "The platform provides pointing accuracy adequate for the instrument. "
            "Electric propulsion maintains the orbit over the mission lifetime."]),
        ("5 Ground Segment", [
            "Data are received by polar ground stations and processed within three hours of sensing. "
            "The processing chain produces gridded products that are archived for climate studies "
            "and shared with partner agencies."]),
    ]),
]

# question, gold answer, (report id, section index)
QA_TESTSET = [
    ("Which launcher will Athena use?", "Ariane 5", ("cdf-athena", 1)),
    ("How long does the transfer to the operational orbit take?", "90 days", ("cdf-athena", 1)),
    ("What is the focal length of the X-ray telescope?", "12 metres", ("cdf-athena", 2)),
    ("How much power does the solar array provide at the end of the mission?", "2500 watts",
     ("cdf-athena", 3)),
    ("Where is the Science Operations Centre of Athena located?", "Villafranca", ("cdf-athena", 4)),
    ("Which process extracts oxygen from the regolith?", "molten salt electrolysis", ("cdf-lunar", 0)),
    ("What is the payload mass of the lander?", "120 kg", ("cdf-lunar", 2)),
    ("What does the lander carry to survive the lunar night?", "radioisotope heater unit",
     ("cdf-lunar", 3)),
    ("Through which relay does the lander communicate with Earth?", "Lunar Gateway", ("cdf-lunar", 4)),
    ("What is the target of the mission?", "Vega upper stage adapter", ("cdf-debris", 0)),
    ("How many robotic arms does the chaser use to capture the target?", "four", ("cdf-debris", 1)),
    ("Where does the stack perform the controlled re-entry?", "South Pacific Ocean", ("cdf-debris", 2)),
    ("How many satellites does the constellation have?", "6", ("cdf-sst", 1)),
    ("In which orbit do the satellites fly?", "sun-synchronous", ("cdf-sst", 1)),
    ("What is the spatial resolution of the thermal infrared sensor?", "1 km", ("cdf-sst", 2)),
]

QUALITY_PROCEDURE = ("qp-ncr", "Nonconformance and Problem Report Procedure", "2017-02-15", [
    ("1 Purpose and Scope", [
        "This procedure defines how nonconformances and problems are reported, analysed and closed "
        "for flight hardware and software. It applies to all projects managed at ESTEC and to every "
        "supplier delivering items to those projects.",
        "A nonconformance is a condition of an item that does not meet a specified requirement. "
        "The term covers hardware, software, documentation and processes. Deviations approved before "
        "manufacturing are handled by the waiver process instead.",
        "A Problem Report is the record used to document an anomaly observed during test or operations. "
        "Each report receives a unique number from the database and keeps it until archiving, even "
        "when the report is later merged with another one.",
        "The procedure has been applied since 2012 across the science and earth observation "
        "directorates. Earlier practice relied on paper forms that were difficult to trace and were "
        "often lost when teams moved between buildings.",
        "Compliance with this procedure is verified during audits by product assurance. Findings from "
        "audits are tracked as actions with owners and due dates, and open findings are reviewed "
        "monthly by the quality manager together with the project."]),
    ("2 Roles and Responsibilities", [
        "The originator records the observed anomaly and the conditions under which it occurred. "
        "Any member of the project team or of a supplier can act as originator, including test "
        "operators and software engineers working on the ground segment.",
        "The quality manager approves the classification of every nonconformance. When the quality "
        "manager is absent, the deputy takes the decision and informs the project in writing within "
        "the same working week.",
        "The project manager chairs the Nonconformance Review Board. The board includes product "
        "assurance, engineering and, when needed, the customer representative who speaks for the "
        "interests of the agency at all times.",
        "The supplier shall notify the customer of a major nonconformance within 2 working days. "
        "Minor nonconformances are reported in the monthly progress report together with the status of "
        "their corrective actions.",
        "Galileo Galilei is named in the training material as an early example of careful observation. "
        "The training course is mandatory for new staff and is repeated every three years for "
        "engineers and technicians."]),
    ("3 Classification", [
        "A major nonconformance affects safety, mission success, interfaces or the contractual "
        "requirements. All other nonconformances are classified as minor and are handled by the local "
        "board at the supplier premises.",
        "The classification is proposed by the originator and confirmed by the board. Disagreements "
        "are escalated to the next management level, which takes a final decision within five working "
        "days after the escalation.",
        "Software nonconformances follow the same classification rules as hardware. Their impact on "
        "flight software versions is assessed by the software product assurance engineer before any "
        "patch is uploaded to the spacecraft.",
        "The board may reclassify a nonconformance when new information becomes available. A "
        "reclassification is recorded with its justification in the database so that the history of "
        "the decision remains visible.",
        "Recurring anomalies on the same item indicate a systematic problem. In that case an alert is "
        "issued to other projects using the same part or process, and the alert is kept open until the "
        "fix is confirmed."]),
    ("4 Investigation", [
        "Root cause identification is mandatory for the closure of a Problem Report. "
        "Investigations use fault trees, test data and inspection of the failed item, and the "
        "conclusions are documented in the report.",
        "The investigation team must preserve the failed item in its original state. Destructive "
        "analysis requires the agreement of the board, because evidence that is lost cannot be "
        "recovered later in the process.",
        "Failure analysis laboratories at ESTEC in Noordwijk support the investigation with microscopy "
        "and chemical analysis. Their reports are attached to the Problem Report and are stored with "
        "the other evidence.",
        "The corrective action removes the cause of the nonconformance. A preventive action removes the "
        "cause of a potential nonconformance in other items, and both actions are tracked until they "
        "are verified.",
        "The verification of corrective actions is performed by product assurance. Evidence of "
        "verification includes test reports and inspection records, which are reviewed before the "
        "actions are declared complete."]),
    ("5 Disposition", [
        "The board decides the disposition of the nonconforming item. The possible decisions are use as "
        "is, repair, rework, return to supplier and scrap, and each decision is recorded with its "
        "justification in the minutes.",
        "A repair restores the function of an item without full conformance to the drawing. A repair "
        "needs the approval of the customer when it concerns a major nonconformance or a flight "
        "critical item of the spacecraft.",
        "Scrapped items are marked and segregated from flight stock. The marking prevents accidental use "
        "of the items in flight hardware, and the segregation area is inspected regularly by quality "
        "staff of the project.",
        "The European Space Agency reviews every waiver that results from a use as is decision. The "
        "waiver states the deviation, the justification and the affected documents, and it is signed "
        "by both parties on paper.",
        "The disposition is implemented only after the board minutes are signed. Work performed before "
        "signature is at the risk of the supplier and may have to be repeated at the expense of the "
        "supplier concerned."]),
    ("6 Closure and Records", [
        "A Problem Report is closed when the root cause is known and the corrective action is verified. "
        "The closure is approved by the quality manager and is recorded in the database with the date "
        "of approval.",
        "Closed reports remain available for 10 years after the end of the project. They are a main "
        "source for lessons learned and for the training of new engineers joining the programme over the following decade.",
        "Lessons learned are extracted twice per year and published in the internal database. Each "
        "lesson names the affected process and a recommendation, and it is linked to the reports that "
        "motivated it in the first place.",
        "Trend analysis of nonconformances is presented at every milestone review. Trends that "
        "exceed agreed thresholds trigger a dedicated investigation with the supplier and a follow up "
        "at the next milestone.",
        "The records of this procedure are controlled documents. Changes to the procedure require the "
        "approval of the head of product assurance, and superseded versions are archived with the "
        "full change history."]),
])
