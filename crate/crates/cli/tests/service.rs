use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: &str) -> (StatusCode, String) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .body(Body::from(body.to_string()))
        .unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn exacts(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x["exact"].as_str().unwrap().to_string())
        .collect()
}

async fn create(app: &Router, body: &str) -> (String, Value) {
    let (status, body) = call(app, "POST", "/session", body).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    let v = json(&body);
    (v["id"].as_str().unwrap().to_string(), v["state"].clone())
}

#[tokio::test]
async fn s4_preset_starts_at_unit_position() {
    let app = wcox::service::router();
    let (_, state) = create(&app, r#"{"preset": "s4-chain"}"#).await;
    assert_eq!(exacts(&state["position"]), ["1", "1", "1"]);
    assert_eq!(state["position"][0]["decimal"], "1.000000");
    assert_eq!(state["mode"], "classical");
}

#[tokio::test]
async fn a2_fire_vertex_one() {
    let app = wcox::service::router();
    let (id, _) = create(&app, "vertices 2\nedge 1 2\n").await;
    let (status, body) = call(
        &app,
        "POST",
        &format!("/session/{id}/fire"),
        r#"{"vertex": 1}"#,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let state = &json(&body)["state"];
    assert_eq!(exacts(&state["position"]), ["-1", "2"]);
    assert_eq!(state["descent_set"], serde_json::json!([1]));
    assert_eq!(state["word"], serde_json::json!([1]));
    assert_eq!(state["reduced"], true);
    assert_eq!(
        state["classes"],
        serde_json::json!(["negative", "positive"])
    );
    assert_eq!(state["verdict"]["kind"], "faithful_balanced");
}

#[tokio::test]
async fn presets_are_listed() {
    let app = wcox::service::router();
    let (status, body) = call(&app, "GET", "/presets", "").await;
    assert_eq!(status, StatusCode::OK);
    let names: Vec<String> = json(&body)
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["name"].as_str().unwrap().to_string())
        .collect();
    for n in [
        "s4-chain",
        "six-vertex-signed",
        "four-cycle-signed",
        "four-cycle-affine",
        "imo-pentagon",
    ] {
        assert!(names.iter().any(|x| x == n), "{n} missing");
    }
}

#[tokio::test]
async fn error_statuses() {
    let app = wcox::service::router();
    assert_eq!(
        call(&app, "GET", "/session/nope", "").await.0,
        StatusCode::NOT_FOUND
    );
    assert_eq!(
        call(&app, "POST", "/session/nope/fire", r#"{"vertex": 1}"#)
            .await
            .0,
        StatusCode::NOT_FOUND
    );
    assert_eq!(
        call(&app, "POST", "/session/nope/undo", "").await.0,
        StatusCode::NOT_FOUND
    );

    let (id, _) = create(&app, r#"{"preset": "a2"}"#).await;
    let fire = format!("/session/{id}/fire");
    assert_eq!(
        call(&app, "POST", &fire, r#"{"vertex": 3}"#).await.0,
        StatusCode::UNPROCESSABLE_ENTITY
    );
    assert_eq!(
        call(&app, "POST", &fire, r#"{"vertex": 0}"#).await.0,
        StatusCode::UNPROCESSABLE_ENTITY
    );
    assert_eq!(
        call(&app, "POST", &fire, "garbage").await.0,
        StatusCode::UNPROCESSABLE_ENTITY
    );
    assert_eq!(
        call(&app, "POST", &format!("/session/{id}/undo"), "")
            .await
            .0,
        StatusCode::UNPROCESSABLE_ENTITY
    );

    // Parse errors and illegal weights are rejected at creation.
    let (status, body) = call(&app, "POST", "/session", "vertices 2\nedge 1 5\n").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(json(&body)["error"].as_str().unwrap().contains("line 2"));
    let (status, _) = call(
        &app,
        "POST",
        "/session",
        "weights directed\nvertices 2\nedge 1 2 w=2\n",
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, _) = call(&app, "POST", "/session", r#"{"preset": "missing"}"#).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);

    // Unbalanced weights: the session exists, but firing conflicts.
    let (id, state) = create(&app, r#"{"preset": "four-cycle-signed"}"#).await;
    assert_eq!(state["mode"], "unavailable");
    assert_eq!(state["verdict"]["kind"], "not_faithful");
    let (status, _) = call(
        &app,
        "POST",
        &format!("/session/{id}/fire"),
        r#"{"vertex": 1}"#,
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn undo_and_reset() {
    let app = wcox::service::router();
    let (id, initial) = create(&app, r#"{"preset": "six-vertex-signed"}"#).await;
    assert_eq!(initial["mode"], "generalized");
    let fire = format!("/session/{id}/fire");
    let (_, after_one) = call(&app, "POST", &fire, r#"{"vertex": 2}"#).await;
    call(&app, "POST", &fire, r#"{"vertex": 3}"#).await;
    let (status, undone) = call(&app, "POST", &format!("/session/{id}/undo"), "").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(undone, after_one);
    let (_, reset) = call(&app, "POST", &format!("/session/{id}/reset"), "").await;
    assert_eq!(json(&reset)["state"], initial);
    let (_, shown) = call(&app, "GET", &format!("/session/{id}"), "").await;
    assert_eq!(shown, reset);
}

#[tokio::test]
async fn replay_is_byte_identical() {
    let app = wcox::service::router();
    let graph = r#"{"graph": "vertices 4\nedge 1 2 w=zeta(3)\nedge 2 3 m=4 w=-1\nedge 3 4", "start": ["1", "zeta(3)^2", "-1/2", 2]}"#;
    let (id, _) = create(&app, graph).await;
    for v in [1, 3, 2, 4, 2, 1, 3] {
        let (status, _) = call(
            &app,
            "POST",
            &format!("/session/{id}/fire"),
            &format!(r#"{{"vertex": {v}}}"#),
        )
        .await;
        assert_eq!(status, StatusCode::OK);
    }
    call(&app, "POST", &format!("/session/{id}/undo"), "").await;
    let (_, original) = call(&app, "GET", &format!("/session/{id}"), "").await;
    let word: Vec<u64> = json(&original)["state"]["word"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();

    let (replay, _) = create(&app, graph).await;
    for v in &word {
        call(
            &app,
            "POST",
            &format!("/session/{replay}/fire"),
            &format!(r#"{{"vertex": {v}}}"#),
        )
        .await;
    }
    let (_, rebuilt) = call(&app, "GET", &format!("/session/{replay}"), "").await;
    assert_ne!(id, replay);
    assert_eq!(original.replacen(&id, &replay, 1), rebuilt);
}

#[tokio::test]
async fn service_matches_cli_play() {
    let app = wcox::service::router();
    let (id, _) = create(&app, r#"{"preset": "imo-pentagon"}"#).await;
    for v in [1, 2, 5] {
        call(
            &app,
            "POST",
            &format!("/session/{id}/fire"),
            &format!(r#"{{"vertex": {v}}}"#),
        )
        .await;
    }
    let (_, body) = call(&app, "GET", &format!("/session/{id}"), "").await;
    let cli = wcox::commands::play("preset:imo-pentagon", "1 2 5", None, false).unwrap();
    assert_eq!(json(&body)["state"], cli.json);
}

#[tokio::test]
async fn sessions_are_independent_under_concurrency() {
    let app = wcox::service::router();
    let mut ids = Vec::new();
    for _ in 0..4 {
        ids.push(create(&app, r#"{"preset": "s4-chain"}"#).await.0);
    }
    let tasks: Vec<_> = ids
        .iter()
        .enumerate()
        .map(|(k, id)| {
            let app = app.clone();
            let id = id.clone();
            tokio::spawn(async move {
                for _ in 0..=k {
                    call(
                        &app,
                        "POST",
                        &format!("/session/{id}/fire"),
                        r#"{"vertex": 2}"#,
                    )
                    .await;
                }
            })
        })
        .collect();
    for t in tasks {
        t.await.unwrap();
    }
    for (k, id) in ids.iter().enumerate() {
        let (_, body) = call(&app, "GET", &format!("/session/{id}"), "").await;
        assert_eq!(
            json(&body)["state"]["word"].as_array().unwrap().len(),
            k + 1
        );
    }
}
