//! Starts the HTTP service on an ephemeral port, stores the bundled example
//! and evaluates it through the API, then shuts down.
//!
//! cargo run --example http_service

use std::io::{Read, Write};
use std::net::{SocketAddr, TcpStream};

use ndmm::service::{ServeConfig, Server};

fn http(addr: SocketAddr, method: &str, path: &str, body: &str) -> std::io::Result<String> {
    let mut s = TcpStream::connect(addr)?;
    write!(
        s,
        "{method} {path} HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\n\
         Content-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )?;
    let mut response = String::new();
    s.read_to_string(&mut response)?;
    Ok(response.split_once("\r\n\r\n").map_or(response.clone(), |(_, b)| b.to_owned()))
}

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let server = Server::bind(&ServeConfig { port: 0, ..Default::default() }).await?;
    let addr = server.local_addr()?;
    let (stop, stopped) = tokio::sync::oneshot::channel::<()>();
    let handle = tokio::spawn(server.run_until(async {
        let _ = stopped.await;
    }));
    println!("serving on http://{addr}");

    let client = tokio::task::spawn_blocking(move || -> std::io::Result<()> {
        let created = http(addr, "POST", "/api/problems", include_str!("data/worked_example.json"))?;
        println!("POST /api/problems -> {}", created.trim());
        let id = created.split('"').nth(3).unwrap_or_default().to_owned();
        for k in ["0", "0.5"] {
            let body = http(addr, "GET", &format!("/api/problems/{id}/evaluate?k={k}"), "")?;
            let selected = body.split("\"selected\":").nth(1).and_then(|s| s.split('"').nth(1));
            println!("evaluate k={k}: selected {}", selected.unwrap_or("?"));
        }
        println!(
            "sensitivity: {}",
            http(addr, "GET", &format!("/api/problems/{id}/sensitivity"), "")?.trim()
        );
        Ok(())
    });
    client.await??;

    let _ = stop.send(());
    handle.await??;
    Ok(())
}
